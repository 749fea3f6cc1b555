#include "pudg/models.hpp"

#include "pudg/errors.hpp"

#include <algorithm>
#include <functional>

namespace pudg {

namespace {

bool same_nodes_and_data(const DataGraph& a, const DataGraph& b) {
  return a.alphabet() == b.alphabet() && a.data() == b.data();
}

void check_probability(const Rational& p) {
  if (p <= 0 || p >= 1) fail(ErrorKind::Precondition, "probability parameter must lie strictly between 0 and 1");
}

NodeId next_id(const DataGraph& g) { return g.node_count() == 0 ? 0 : g.max_node_id() + 1; }

Rational deletion_weight(const std::function<Rational(const Label&)>& prob, std::optional<std::uint64_t> max_deletions,
                         const DataGraph& clean, const DataGraph& obs) {
  if (!same_nodes_and_data(clean, obs)) return 0;
  if (!std::includes(clean.edges().begin(), clean.edges().end(), obs.edges().begin(), obs.edges().end())) return 0;
  std::uint64_t dropped = clean.edge_count() - obs.edge_count();
  if (max_deletions && dropped > *max_deletions) return 0;
  Rational w = 1;
  for (const auto& e : clean.edges()) {
    Rational p = prob(e.label);
    w *= obs.has_edge(e) ? Rational(1 - p) : p;
  }
  if (!max_deletions) return w;
  // Mass of outcomes with j drops, then condition on j <= max.
  std::vector<Rational> dp(1, Rational(1));
  for (const auto& e : clean.edges()) {
    Rational p = prob(e.label);
    std::vector<Rational> next(dp.size() + 1, Rational(0));
    for (std::size_t j = 0; j < dp.size(); ++j) {
      next[j] += dp[j] * (1 - p);
      next[j + 1] += dp[j] * p;
    }
    dp = std::move(next);
  }
  Rational z = 0;
  for (std::size_t j = 0; j < dp.size() && j <= *max_deletions; ++j) z += dp[j];
  return w / z;
}

RealizationModel deletion_model(std::function<Rational(const Label&)> prob, std::optional<std::uint64_t> max_deletions) {
  RealizationModel m;
  m.klass = PiClass::Subset;
  m.name = "edge_deletion";
  m.params.max_added_edges = max_deletions;
  m.weight = [prob, max_deletions](const DataGraph& clean, const DataGraph& obs) {
    return deletion_weight(prob, max_deletions, clean, obs);
  };
  return m;
}

}  // namespace

RealizationModel edge_deletion_model(const std::map<Label, Rational>& p_per_label,
                                     std::optional<std::uint64_t> max_deletions) {
  for (const auto& [_, p] : p_per_label) check_probability(p);
  return deletion_model(
      [p_per_label](const Label& l) -> Rational {
        auto it = p_per_label.find(l);
        if (it == p_per_label.end()) fail(ErrorKind::Precondition, "no deletion probability for label '" + l + "'");
        return it->second;
      },
      max_deletions);
}

RealizationModel edge_deletion_model(const Rational& p, std::optional<std::uint64_t> max_deletions) {
  check_probability(p);
  return deletion_model([p](const Label&) { return p; }, max_deletions);
}

RealizationModel uniform_subset_model() {
  RealizationModel m;
  m.klass = PiClass::Subset;
  m.name = "uniform_subset";
  m.weight = [](const DataGraph& clean, const DataGraph& obs) -> Rational {
    if (!same_nodes_and_data(clean, obs)) return 0;
    if (!std::includes(clean.edges().begin(), clean.edges().end(), obs.edges().begin(), obs.edges().end())) return 0;
    return inv_pow2(clean.edge_count());
  };
  return m;
}

RealizationModel edge_addition_model(const Rational& p, std::optional<std::uint64_t> max_additions) {
  check_probability(p);
  RealizationModel m;
  m.klass = PiClass::Superset;
  m.name = "edge_addition";
  m.params.max_removed = max_additions;
  m.weight = [p, max_additions](const DataGraph& clean, const DataGraph& obs) -> Rational {
    if (!same_nodes_and_data(clean, obs)) return 0;
    if (!std::includes(obs.edges().begin(), obs.edges().end(), clean.edges().begin(), clean.edges().end())) return 0;
    std::uint64_t added = obs.edge_count() - clean.edge_count();
    std::uint64_t slots = missing_edges(clean);
    if (max_additions && added > *max_additions) return 0;
    Rational w = pow(p, added) * pow(1 - p, slots - added);
    if (!max_additions) return w;
    Rational z = 0;
    for (std::uint64_t j = 0; j <= std::min(slots, *max_additions); ++j)
      z += Rational(binomial(slots, j)) * pow(p, j) * pow(1 - p, slots - j);
    return w / z;
  };
  return m;
}

RealizationModel bounded_addition_model(std::uint64_t c, std::set<DataValue> universe) {
  RealizationModel m;
  m.klass = PiClass::Superset;
  m.name = "bounded_addition";
  m.params.max_removed = c;
  m.params.node_additions = true;
  m.weight = [c, universe](const DataGraph& clean, const DataGraph& obs) -> Rational {
    if (clean.alphabet() != obs.alphabet() || !subgraph_leq(clean, obs)) return 0;
    std::uint64_t j = obs.node_count() - clean.node_count();
    NodeId base = next_id(clean);
    for (std::uint64_t i = 0; i < j; ++i) {
      auto it = obs.data().find(base + i);
      if (it == obs.data().end() || !universe.count(it->second)) return 0;
    }
    std::uint64_t added = j + (obs.edge_count() - clean.edge_count());
    if (added > c) return 0;
    BigInt support = 0;
    std::uint64_t n = clean.node_count(), labels = clean.alphabet().size();
    BigInt values_pow = 1;
    for (std::uint64_t k = 0; k <= c; ++k) {
      if (k > 0) values_pow *= universe.size();
      if (values_pow == 0) break;
      std::uint64_t slots = labels * (n + k) * (n + k) - clean.edge_count();
      BigInt edges = 0;
      for (std::uint64_t e = 0; e + k <= c; ++e) edges += binomial(slots, e);
      support += values_pow * edges;
    }
    return Rational(BigInt(1), support);
  };
  return m;
}

RealizationModel data_update_model(const KDataPrior& f, std::uint64_t z, const Rational& p) {
  f.validate();
  check_probability(p);
  // misread[c] = observed values that may stand for clean value c.
  std::map<DataValue, std::set<DataValue>> misread;
  for (const auto& [obs_value, cleans] : f.table)
    for (const auto& c : cleans)
      if (c != obs_value) misread[c].insert(obs_value);
  RealizationModel m;
  m.klass = PiClass::NodeUpdate;
  m.name = "data_update";
  m.params.data_prior = f;
  m.params.max_data_updates = z;
  m.weight = [misread, z, p](const DataGraph& clean, const DataGraph& obs) -> Rational {
    if (clean.alphabet() != obs.alphabet() || !equiv_up_to_data(clean, obs)) return 0;
    std::uint64_t changeable = 0, changed = 0;
    Rational w = 1;
    for (const auto& [v, d] : clean.data()) {
      auto it = misread.find(d);
      std::size_t options = it == misread.end() ? 0 : it->second.size();
      if (options) ++changeable;
      const DataValue& seen = obs.data_of(v);
      if (seen == d) continue;
      if (!options || !it->second.count(seen)) return 0;
      ++changed;
      w *= p / Rational(options);
    }
    if (changed > z) return 0;
    w *= pow(1 - p, changeable - changed);
    Rational norm = 0;
    for (std::uint64_t i = 0; i <= std::min(z, changeable); ++i)
      norm += Rational(binomial(changeable, i)) * pow(p, i) * pow(1 - p, changeable - i);
    return w / norm;
  };
  return m;
}

Prior uniform_structure_prior(const DataGraph& base, const std::set<Edge>& required, const std::set<Edge>& forbidden,
                              bool allow_loops) {
  DataGraph skeleton(base.alphabet());
  for (const auto& [v, d] : base.data()) skeleton.add_node(v, d);
  for (const auto& e : required) {
    if (forbidden.count(e) || (!allow_loops && e.from == e.to))
      fail(ErrorKind::Precondition, "an edge is both required and excluded");
    skeleton.add_edge(e.from, e.label, e.to);
  }
  std::vector<Edge> free;
  for (const auto& e : absent_edges(skeleton))
    if (!forbidden.count(e) && (allow_loops || e.from != e.to)) free.push_back(e);
  Rational mass = inv_pow2(free.size());
  std::set<Edge> free_set(free.begin(), free.end());
  auto weight = [skeleton, free_set, mass](const DataGraph& g) -> Rational {
    if (g.alphabet() != skeleton.alphabet() || g.data() != skeleton.data()) return 0;
    for (const auto& e : skeleton.edges())
      if (!g.has_edge(e)) return 0;
    for (const auto& e : g.edges())
      if (!skeleton.has_edge(e) && !free_set.count(e)) return 0;
    return mass;
  };
  auto enumerate = [skeleton, free](const DataGraph&, const Budget& budget) {
    if (free.size() >= 63 || (std::uint64_t{1} << free.size()) > budget.max_candidates)
      fail(ErrorKind::Budget, "uniform prior support of 2^" + std::to_string(free.size()) + " graphs exceeds the budget");
    std::vector<DataGraph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      DataGraph g = skeleton;
      for (std::size_t i = 0; i < free.size(); ++i)
        if (mask >> i & 1) g.add_edge(free[i].from, free[i].label, free[i].to);
      out.push_back(std::move(g));
    }
    return out;
  };
  return Prior::intensional(weight, enumerate);
}

}  // namespace pudg
