#pragma once

#include "pudg/datagraph.hpp"
#include "pudg/emdg.hpp"
#include "pudg/gxpath/ast.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace pudg {

struct CleaningResult {
  DataGraph best;
  Rational score;                      // I(G) * R(G)(G'), unnormalized
  std::optional<Rational> probability; // set when every candidate was scored
  std::uint64_t candidates_examined = 0;
};

// Argmax over the enumerated candidates; ties go to the canonically smallest graph.
CleaningResult clean(const Pudg& pudg);
// Whether the best candidate's normalized probability is strictly above b.
bool clean_bound(const Pudg& pudg, const Rational& b);

// Same contract as clean, candidates limited to the named edit budget.
CleaningResult clean_subset_bounded(const Pudg& pudg, std::uint64_t k_e);
CleaningResult clean_superset_bounded(const Pudg& pudg, std::uint64_t c);
CleaningResult clean_node_update(const Pudg& pudg, const KDataPrior& f, std::uint64_t z);

// Cost of turning one value into another, plus the values listed by nondecreasing cost.
struct TransitionCost {
  std::function<std::int64_t(const DataValue& from, const DataValue& to)> delta;
  // First `count` values d with delta(from, d) nondecreasing; starts with `from` itself.
  std::function<std::vector<DataValue>(const DataValue& from, std::size_t count)> prefix;

  // Finite universe; missing table entries cost `fallback` (and 0 on the diagonal).
  static TransitionCost from_table(std::set<DataValue> universe,
                                   std::map<std::pair<DataValue, DataValue>, std::int64_t> table,
                                   std::int64_t fallback);
  // 0 for equal values, 1 otherwise, over an unbounded universe of fresh values.
  static TransitionCost uniform();
};

using CardinalityTarget = std::map<DataValue, std::uint64_t>;

struct CostResult {
  DataGraph graph;
  std::int64_t cost = 0;
};

struct FixedAssignmentResult {
  DataGraph graph;
  Rational product;  // product of w over the nodes that were not fixed
};

using AssignmentWeight = std::function<Rational(const DataValue&, NodeId)>;

// Bijection nodes -> values extending `known`, maximizing the product of w over free nodes.
FixedAssignmentResult clean_fixed_assignment(const DataGraph& observed, const std::vector<DataValue>& values,
                                             const std::map<NodeId, DataValue>& known, const AssignmentWeight& w);

// Histogram exactly T, minimum total delta(D_G(v), D_H(v)).
CostResult clean_cardinality(const DataGraph& observed, const CardinalityTarget& target, const TransitionCost& cost);

struct MinDistinctResult {
  DataGraph graph;
  std::map<NodeId, DataValue> assignment;
  std::set<DataValue> values;
  bool exact = true;
};
MinDistinctResult clean_min_distinct(const DataGraph& observed, const std::map<NodeId, std::set<DataValue>>& allowed,
                                     std::size_t exact_cap = 64);

struct MinDistinctLabelsResult {
  DataGraph graph;
  std::map<std::pair<NodeId, NodeId>, Label> assignment;
  std::set<Label> labels;
  bool exact = true;
};
// Each listed pair keeps exactly one edge, with a label from its allowed set.
MinDistinctLabelsResult clean_min_distinct_labels(const DataGraph& observed,
                                                  const std::map<std::pair<NodeId, NodeId>, std::set<Label>>& allowed,
                                                  std::size_t exact_cap = 64);

// Graph equal to g up to data that satisfies nu at o (or globally when o is absent).
std::optional<DataGraph> isomorphic_repair(const DataGraph& g, const gx::NodePtr& nu, std::optional<NodeId> o,
                                           const Budget& budget = {});

// Cheapest data change making nu hold at o.
CostResult clean_origin_expression(const DataGraph& g, NodeId o, const gx::NodePtr& nu, const TransitionCost& cost,
                                   const Budget& budget = {});

std::int64_t transition_cost(const DataGraph& from, const DataGraph& to, const TransitionCost& cost);

}  // namespace pudg
