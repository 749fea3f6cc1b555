#pragma once

#include "pudg/emdg.hpp"
#include "pudg/gxpath/ast.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pudg {

enum class Semantics { Global, Origin };

struct Restriction {
  gx::Query query;
  Rational weight;  // in [0,1); 0 excludes every graph satisfying the query
  Semantics semantics = Semantics::Global;
  std::optional<NodeId> origin;  // required for origin semantics
};

using WeightedRestrictionSet = std::vector<Restriction>;

void validate(const Restriction& r);
bool restriction_holds(const DataGraph& g, const Restriction& r);
// weight if g satisfies the restriction, 1 otherwise.
Rational kappa(const DataGraph& g, const Restriction& r);

// Unnormalized prior I(G) * prod kappa(G, r); the enumerator (if any) drops zero-weight graphs.
Prior reweight_prior(const Prior& prior, const WeightedRestrictionSet& w);

// I(G) * kappa / (p * w + 1 - p), where p is the prior mass of graphs satisfying the restriction.
Rational single_constraint_closed_form(const DataGraph& g, const Rational& prior_weight, const Restriction& r,
                                       const Rational& p_satisfied);

// masses[b] is the prior mass of graphs whose satisfaction pattern over the restrictions is b.
Rational closed_form_normalizer(const WeightedRestrictionSet& w, const std::map<std::vector<bool>, Rational>& masses);
Rational multi_constraint_closed_form(const DataGraph& g, const Rational& prior_weight, const WeightedRestrictionSet& w,
                                      const std::map<std::vector<bool>, Rational>& masses);

}  // namespace pudg
