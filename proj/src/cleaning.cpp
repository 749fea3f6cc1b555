#include "pudg/cleaning.hpp"

#include "pudg/assignment.hpp"
#include "pudg/errors.hpp"
#include "pudg/hitting_set.hpp"
#include "pudg/parallel.hpp"

#include <algorithm>

namespace pudg {

namespace {

CleaningResult pick_best(std::vector<Candidate> cands, bool complete) {
  if (cands.empty()) fail(ErrorKind::NoCandidate, "no clean graph has positive posterior mass");
  std::size_t best = 0;
  Rational total = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    total += cands[i].score;
    if (cands[i].score > cands[best].score) best = i;  // candidates arrive in canonical order
  }
  CleaningResult r;
  r.best = std::move(cands[best].graph);
  r.score = cands[best].score;
  if (complete) r.probability = r.score / total;
  r.candidates_examined = cands.size();
  return r;
}

CleaningResult clean_with_model(const Pudg& pudg, const RealizationModel& restricted, bool complete) {
  auto graphs = cosupport(restricted, pudg.observed, pudg.budget);
  std::vector<Rational> scores(graphs.size());
  parallel_for(graphs.size(), pudg.budget.jobs, [&](std::size_t i) {
    Rational r = pudg.model.weight(graphs[i], pudg.observed);
    scores[i] = r > 0 ? Rational(r * pudg.prior.weight(graphs[i])) : Rational(0);
  });
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    if (scores[i] > 0) cands.push_back({std::move(graphs[i]), std::move(scores[i])});
  return pick_best(std::move(cands), complete);
}

void require_class(const Pudg& pudg, PiClass k) {
  if (pudg.model.klass != k)
    fail(ErrorKind::Precondition, std::string("solver needs a ") + class_name(k) + " model, got " +
                                      class_name(pudg.model.klass));
}

}  // namespace

CleaningResult clean(const Pudg& pudg) { return pick_best(scored_candidates(pudg), true); }

bool clean_bound(const Pudg& pudg, const Rational& b) {
  auto cands = scored_candidates(pudg);
  if (cands.empty()) return false;
  return *pick_best(std::move(cands), true).probability > b;
}

CleaningResult clean_subset_bounded(const Pudg& pudg, std::uint64_t k_e) {
  require_class(pudg, PiClass::Subset);
  RealizationModel m = pudg.model;
  bool complete = m.params.max_added_edges && *m.params.max_added_edges <= k_e && !m.params.node_deletions;
  m.params.max_added_edges = k_e;
  m.params.node_deletions = false;
  return clean_with_model(pudg, m, complete);
}

CleaningResult clean_superset_bounded(const Pudg& pudg, std::uint64_t c) {
  require_class(pudg, PiClass::Superset);
  RealizationModel m = pudg.model;
  bool complete = m.params.max_removed && *m.params.max_removed <= c;
  m.params.max_removed = c;
  return clean_with_model(pudg, m, complete);
}

CleaningResult clean_node_update(const Pudg& pudg, const KDataPrior& f, std::uint64_t z) {
  require_class(pudg, PiClass::NodeUpdate);
  f.validate();
  RealizationModel m = pudg.model;
  bool complete = m.params.data_prior == f && m.params.max_data_updates <= z;
  m.params.data_prior = f;
  m.params.max_data_updates = z;
  return clean_with_model(pudg, m, complete);
}

TransitionCost TransitionCost::from_table(std::set<DataValue> universe,
                                          std::map<std::pair<DataValue, DataValue>, std::int64_t> table,
                                          std::int64_t fallback) {
  for (const auto& [k, v] : table)
    if (v < 0) fail(ErrorKind::Precondition, "transition costs must be non-negative");
  if (fallback < 0) fail(ErrorKind::Precondition, "transition costs must be non-negative");
  auto tab = std::make_shared<const decltype(table)>(std::move(table));
  auto delta = [tab, fallback](const DataValue& a, const DataValue& b) -> std::int64_t {
    if (a == b) return 0;
    auto it = tab->find({a, b});
    return it == tab->end() ? fallback : it->second;
  };
  auto uni = std::make_shared<const std::set<DataValue>>(std::move(universe));
  auto prefix = [uni, delta](const DataValue& from, std::size_t count) {
    std::vector<DataValue> vals(uni->begin(), uni->end());
    if (!uni->count(from)) vals.push_back(from);
    std::sort(vals.begin(), vals.end(), [&](const DataValue& x, const DataValue& y) {
      auto kx = std::make_tuple(delta(from, x), x != from, x);
      auto ky = std::make_tuple(delta(from, y), y != from, y);
      return kx < ky;
    });
    if (vals.size() > count) vals.resize(count);
    return vals;
  };
  return {delta, prefix};
}

TransitionCost TransitionCost::uniform() {
  auto delta = [](const DataValue& a, const DataValue& b) -> std::int64_t { return a == b ? 0 : 1; };
  auto prefix = [](const DataValue& from, std::size_t count) {
    std::vector<DataValue> vals;
    if (count == 0) return vals;
    vals.push_back(from);
    for (auto& v : fresh_values({from}, count - 1)) vals.push_back(std::move(v));
    return vals;
  };
  return {delta, prefix};
}

std::int64_t transition_cost(const DataGraph& from, const DataGraph& to, const TransitionCost& cost) {
  std::int64_t total = 0;
  for (const auto& [v, d] : from.data()) total += cost.delta(d, to.data_of(v));
  return total;
}

FixedAssignmentResult clean_fixed_assignment(const DataGraph& observed, const std::vector<DataValue>& values,
                                             const std::map<NodeId, DataValue>& known, const AssignmentWeight& w) {
  const std::set<DataValue> value_set(values.begin(), values.end());
  if (value_set.size() != values.size()) fail(ErrorKind::Precondition, "assignment values must be distinct");
  if (values.size() != observed.node_count())
    fail(ErrorKind::Precondition, "need exactly one value per node (" + std::to_string(observed.node_count()) +
                                      " nodes, " + std::to_string(values.size()) + " values)");
  std::set<DataValue> taken;
  for (const auto& [v, d] : known) {
    if (!observed.has_node(v)) fail(ErrorKind::DanglingEndpoint, "fixed node " + std::to_string(v) + " not in graph");
    if (!value_set.count(d)) fail(ErrorKind::Precondition, "fixed value '" + d + "' is not in the value list");
    if (!taken.insert(d).second) fail(ErrorKind::Precondition, "fixed value '" + d + "' used twice");
  }
  std::vector<NodeId> free_nodes;
  for (NodeId v : observed.nodes())
    if (!known.count(v)) free_nodes.push_back(v);
  std::vector<DataValue> free_values;
  for (const auto& d : values)
    if (!taken.count(d)) free_values.push_back(d);

  std::vector<std::vector<Rational>> wm(free_nodes.size());
  for (std::size_t i = 0; i < free_nodes.size(); ++i)
    for (const auto& d : free_values) {
      Rational x = w(d, free_nodes[i]);
      if (x < 0 || x > 1) fail(ErrorKind::Precondition, "assignment weights must lie in [0,1]");
      wm[i].push_back(x);
    }
  auto col = max_product_assignment(wm);
  if (!col) fail(ErrorKind::Infeasible, "zero weights leave no complete assignment");
  FixedAssignmentResult r;
  r.product = 1;
  std::map<NodeId, DataValue> data = known;
  for (std::size_t i = 0; i < free_nodes.size(); ++i) {
    data[free_nodes[i]] = free_values[(*col)[i]];
    r.product *= wm[i][(*col)[i]];
  }
  r.graph = with_data(observed, data);
  return r;
}

CostResult clean_cardinality(const DataGraph& observed, const CardinalityTarget& target, const TransitionCost& cost) {
  std::uint64_t total = 0;
  std::vector<DataValue> copies;
  for (const auto& [c, k] : target) {
    if (c.empty()) fail(ErrorKind::Format, "empty data value in cardinality target");
    total += k;
    if (total > observed.node_count()) break;
    copies.insert(copies.end(), k, c);
  }
  if (total != observed.node_count())
    fail(ErrorKind::Precondition, "cardinality target does not add up to the node count");
  auto nodes = observed.nodes();
  std::vector<std::vector<std::optional<std::int64_t>>> m(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& d = observed.data_of(nodes[i]);
    // Copies of the same value share their cost.
    std::optional<std::int64_t> last;
    for (std::size_t j = 0; j < copies.size(); ++j) {
      if (j == 0 || copies[j] != copies[j - 1]) last = cost.delta(d, copies[j]);
      if (*last < 0) fail(ErrorKind::Precondition, "transition costs must be non-negative");
      m[i].push_back(last);
    }
  }
  auto col = min_cost_assignment(m);
  CostResult r;
  std::map<NodeId, DataValue> data;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    data[nodes[i]] = copies[(*col)[i]];
    r.cost += *m[i][(*col)[i]];
  }
  r.graph = with_data(observed, data);
  return r;
}

namespace {

template <class Key, class Value>
struct HittingOutcome {
  std::map<Key, Value> assignment;
  std::set<Value> chosen;
  bool exact = true;
};

// `prefer` is the value kept when it belongs to the hitting set.
template <class Key, class Value>
HittingOutcome<Key, Value> hitting_assignment(const std::map<Key, std::set<Value>>& allowed,
                                              const std::function<std::optional<Value>(const Key&)>& prefer,
                                              std::size_t cap) {
  std::set<Value> universe_set;
  for (const auto& [k, xs] : allowed) {
    if (xs.empty()) fail(ErrorKind::Precondition, "every allowed set must be non-empty");
    universe_set.insert(xs.begin(), xs.end());
  }
  std::vector<Value> universe(universe_set.begin(), universe_set.end());
  auto id = [&](const Value& x) {
    return static_cast<std::size_t>(std::lower_bound(universe.begin(), universe.end(), x) - universe.begin());
  };
  std::vector<std::vector<std::size_t>> family;
  for (const auto& [k, xs] : allowed) {
    std::vector<std::size_t> s;
    for (const auto& x : xs) s.push_back(id(x));
    family.push_back(std::move(s));
  }
  auto hs = min_hitting_set(family, universe.size(), cap);
  HittingOutcome<Key, Value> out;
  out.exact = hs.exact;
  for (auto e : hs.chosen) out.chosen.insert(universe[e]);
  for (const auto& [k, xs] : allowed) {
    auto p = prefer(k);
    if (p && xs.count(*p) && out.chosen.count(*p)) {
      out.assignment[k] = *p;
      continue;
    }
    for (const auto& x : xs)
      if (out.chosen.count(x)) {
        out.assignment[k] = x;
        break;
      }
  }
  return out;
}

}  // namespace

MinDistinctResult clean_min_distinct(const DataGraph& observed, const std::map<NodeId, std::set<DataValue>>& allowed,
                                     std::size_t exact_cap) {
  for (NodeId v : observed.nodes())
    if (!allowed.count(v)) fail(ErrorKind::Precondition, "node " + std::to_string(v) + " has no allowed values");
  for (const auto& [v, xs] : allowed) {
    if (!observed.has_node(v)) fail(ErrorKind::DanglingEndpoint, "node " + std::to_string(v) + " not in graph");
    for (const auto& x : xs)
      if (x.empty()) fail(ErrorKind::Format, "empty data value");
  }
  std::function<std::optional<DataValue>(const NodeId&)> prefer = [&](const NodeId& v) {
    return std::optional<DataValue>(observed.data_of(v));
  };
  auto h = hitting_assignment<NodeId, DataValue>(allowed, prefer, exact_cap);
  MinDistinctResult r;
  r.assignment = std::move(h.assignment);
  r.values = std::move(h.chosen);
  r.exact = h.exact;
  r.graph = with_data(observed, r.assignment);
  return r;
}

MinDistinctLabelsResult clean_min_distinct_labels(const DataGraph& observed,
                                                  const std::map<std::pair<NodeId, NodeId>, std::set<Label>>& allowed,
                                                  std::size_t exact_cap) {
  for (const auto& [vw, ls] : allowed) {
    if (!observed.has_node(vw.first) || !observed.has_node(vw.second))
      fail(ErrorKind::DanglingEndpoint, "edge endpoint not in graph");
    for (const auto& l : ls)
      if (!observed.alphabet().count(l)) fail(ErrorKind::UnknownLabel, "label '" + l + "' not in the alphabet");
  }
  std::function<std::optional<Label>(const std::pair<NodeId, NodeId>&)> prefer =
      [&](const std::pair<NodeId, NodeId>& vw) -> std::optional<Label> {
    for (const auto& e : observed.edges())
      if (e.from == vw.first && e.to == vw.second) return e.label;
    return std::nullopt;
  };
  auto h = hitting_assignment<std::pair<NodeId, NodeId>, Label>(allowed, prefer, exact_cap);
  MinDistinctLabelsResult r;
  r.graph = observed;
  for (const auto& e : observed.edges())
    if (allowed.count({e.from, e.to})) r.graph.remove_edge(e);
  for (const auto& [vw, l] : h.assignment) r.graph.add_edge(vw.first, l, vw.second);
  r.assignment = std::move(h.assignment);
  r.labels = std::move(h.chosen);
  r.exact = h.exact;
  return r;
}

}  // namespace pudg
