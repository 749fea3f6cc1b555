#include "pudg/constraints.hpp"

#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"

namespace pudg {

void validate(const Restriction& r) {
  if (r.weight < 0 || r.weight >= 1) fail(ErrorKind::Precondition, "restriction weights must lie in [0,1)");
  if (r.semantics == Semantics::Origin) {
    if (!r.origin) fail(ErrorKind::Precondition, "origin semantics needs an origin node");
    if (!std::holds_alternative<gx::NodePtr>(r.query))
      fail(ErrorKind::Precondition, "origin semantics needs a node expression");
  }
}

bool restriction_holds(const DataGraph& g, const Restriction& r) {
  if (r.semantics == Semantics::Global) return gx::satisfies_global(g, r.query);
  return g.has_node(*r.origin) && gx::satisfies_at(g, *r.origin, std::get<gx::NodePtr>(r.query));
}

Rational kappa(const DataGraph& g, const Restriction& r) {
  validate(r);
  return restriction_holds(g, r) ? r.weight : Rational(1);
}

Prior reweight_prior(const Prior& prior, const WeightedRestrictionSet& w) {
  if (w.empty()) return prior;
  for (const auto& r : w) validate(r);
  auto weight = [prior, w](const DataGraph& g) {
    Rational x = prior.weight(g);
    for (const auto& r : w) {
      if (x == 0) break;
      x *= kappa(g, r);
    }
    return x;
  };
  SupportEnumerator en;
  if (prior.has_enumerator())
    en = [prior, weight](const DataGraph& obs, const Budget& b) {
      std::vector<DataGraph> out;
      for (auto& g : prior.enumerate(obs, b))
        if (weight(g) > 0) out.push_back(std::move(g));
      return out;
    };
  return Prior::intensional(weight, en);
}

Rational single_constraint_closed_form(const DataGraph& g, const Rational& prior_weight, const Restriction& r,
                                       const Rational& p_satisfied) {
  if (p_satisfied < 0 || p_satisfied > 1) fail(ErrorKind::Precondition, "satisfied mass must lie in [0,1]");
  Rational z = p_satisfied * r.weight + 1 - p_satisfied;
  if (z == 0) fail(ErrorKind::NoCandidate, "the restriction excludes every graph of the prior");
  return prior_weight * kappa(g, r) / z;
}

Rational closed_form_normalizer(const WeightedRestrictionSet& w, const std::map<std::vector<bool>, Rational>& masses) {
  Rational z = 0;
  for (const auto& [pattern, mass] : masses) {
    if (pattern.size() != w.size()) fail(ErrorKind::Precondition, "satisfaction pattern has the wrong length");
    if (mass < 0) fail(ErrorKind::Precondition, "masses must be non-negative");
    Rational f = mass;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (pattern[i]) f *= w[i].weight;
    z += f;
  }
  return z;
}

Rational multi_constraint_closed_form(const DataGraph& g, const Rational& prior_weight, const WeightedRestrictionSet& w,
                                      const std::map<std::vector<bool>, Rational>& masses) {
  Rational z = closed_form_normalizer(w, masses);
  if (z == 0) fail(ErrorKind::NoCandidate, "the restrictions exclude every graph of the prior");
  Rational x = prior_weight;
  for (const auto& r : w) x *= kappa(g, r);
  return x / z;
}

}  // namespace pudg
