#include "pudg/cleaning.hpp"
#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"
#include "pudg/gxpath/fragment.hpp"
#include "pudg/gxpath/partial_eval.hpp"
#include "pudg/gxpath/transforms.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace pudg {

namespace {

using gx::NodePtr;

enum class Verdict { Prune, Accept, Open };

// Nodes reachable from `start` (ignoring direction) in BFS order, then the rest by id.
std::vector<NodeId> bfs_order(const DataGraph& h, std::optional<NodeId> start) {
  std::map<NodeId, std::set<NodeId>> adj;
  for (const auto& e : h.edges()) adj[e.from].insert(e.to), adj[e.to].insert(e.from);
  std::vector<NodeId> order;
  std::set<NodeId> seen;
  auto visit_from = [&](NodeId s) {
    std::deque<NodeId> q{s};
    seen.insert(s);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      order.push_back(v);
      for (NodeId w : adj[v])
        if (seen.insert(w).second) q.push_back(w);
    }
  };
  if (start) visit_from(*start);
  for (NodeId v : h.nodes())
    if (!seen.count(v)) visit_from(v);
  return order;
}

// Subsets of `pool` with exactly k elements, lexicographic; stops when f returns true.
template <class F>
bool for_each_k_subset(const std::vector<NodeId>& pool, std::size_t k, F&& f) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<NodeId> pick;
    for (auto i : idx) pick.push_back(pool[i]);
    if (f(pick)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Partial assignment over the nodes of h, checked with three-valued evaluation.
class Probe {
 public:
  Probe(const DataGraph& h, NodePtr q, std::optional<NodeId> origin, const Budget& budget, std::uint64_t& work)
      : h_(h), q_(std::move(q)), origin_(origin), budget_(budget), work_(work), data_(h.node_count()) {
    auto ids = h.nodes();
    for (std::size_t i = 0; i < ids.size(); ++i) pos_[ids[i]] = i;
  }

  void set(NodeId v, std::optional<DataValue> d) { data_[pos_.at(v)] = std::move(d); }

  Verdict check() {
    if (++work_ > budget_.max_candidates)
      fail(ErrorKind::Budget, "repair search visited more than " + std::to_string(budget_.max_candidates) + " states");
    gx::PartialEvaluator pe(h_, data_);
    const auto& r = pe.node(q_);
    if (origin_) {
      std::size_t p = pos_.at(*origin_);
      if (!r.maybe[p]) return Verdict::Prune;
      return r.sure[p] ? Verdict::Accept : Verdict::Open;
    }
    bool all_sure = true;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!r.maybe[i]) return Verdict::Prune;
      all_sure = all_sure && r.sure[i];
    }
    return all_sure ? Verdict::Accept : Verdict::Open;
  }

  std::map<NodeId, DataValue> assigned() const {
    std::map<NodeId, DataValue> out;
    for (const auto& [v, p] : pos_)
      if (data_[p]) out[v] = *data_[p];
    return out;
  }

 private:
  const DataGraph& h_;
  NodePtr q_;
  std::optional<NodeId> origin_;
  const Budget& budget_;
  std::uint64_t& work_;
  std::vector<std::optional<DataValue>> data_;
  std::map<NodeId, std::size_t> pos_;
};

// Values drawn from `mentioned` plus fresh values in restricted-growth order: the i-th fresh
// value is only tried once fresh values 0..i-1 are in use, since unmentioned values are
// interchangeable up to an injective renaming.
std::optional<std::map<NodeId, DataValue>> repair_search(const DataGraph& h, const NodePtr& q,
                                                         std::optional<NodeId> origin,
                                                         const std::vector<DataValue>& mentioned,
                                                         const std::vector<DataValue>& fresh, const Budget& budget,
                                                         std::uint64_t& work) {
  Probe probe(h, q, origin, budget, work);
  auto order = bfs_order(h, origin);
  std::optional<std::map<NodeId, DataValue>> found;
  auto rec = [&](auto&& self, std::size_t i, std::size_t fresh_used) -> bool {
    Verdict v = probe.check();
    if (v == Verdict::Prune) return false;
    if (v == Verdict::Accept) {
      found = probe.assigned();
      return true;
    }
    if (i == order.size()) return false;
    NodeId node = order[i];
    for (const auto& d : mentioned) {
      probe.set(node, d);
      if (self(self, i + 1, fresh_used)) return true;
    }
    for (std::size_t f = 0; f < fresh.size() && f <= fresh_used; ++f) {
      probe.set(node, fresh[f]);
      if (self(self, i + 1, std::max(fresh_used, f + 1))) return true;
    }
    probe.set(node, std::nullopt);
    return false;
  };
  rec(rec, 0, 0);
  return found;
}

std::vector<DataValue> sorted_values(const std::set<DataValue>& s) { return {s.begin(), s.end()}; }

std::vector<DataValue> fresh_for(const DataGraph& g, const std::set<DataValue>& mentioned, const gx::Query& q,
                                 std::size_t distinct_needed) {
  std::set<DataValue> avoid = g.data_values();
  avoid.insert(mentioned.begin(), mentioned.end());
  // Without path comparisons only equality with constants matters, so one fresh value suffices.
  std::size_t count = gx::has_path_comparison(q) ? distinct_needed : 1;
  return fresh_values(avoid, std::max<std::size_t>(count, 1));
}

void require_origin(const DataGraph& g, NodeId o) {
  if (!g.has_node(o)) fail(ErrorKind::DanglingEndpoint, "origin " + std::to_string(o) + " not in graph");
}

}  // namespace

std::optional<DataGraph> isomorphic_repair(const DataGraph& g, const NodePtr& nu, std::optional<NodeId> o,
                                           const Budget& budget) {
  std::uint64_t work = 0;
  if (!o) {
    if (gx::satisfies_global(g, nu)) return g;
    auto mentioned = gx::mentioned_data_values(nu);
    auto fresh = fresh_for(g, mentioned, nu, g.node_count());
    auto a = repair_search(g, nu, std::nullopt, sorted_values(mentioned), fresh, budget, work);
    if (!a) return std::nullopt;
    DataGraph h = with_data(g, *a);
    if (!gx::satisfies_global(h, nu)) fail(ErrorKind::Precondition, "repair failed re-verification");
    return h;
  }
  require_origin(g, *o);
  if (gx::satisfies_at(g, *o, nu)) return g;
  auto mentioned = gx::mentioned_data_values(nu);

  if (!gx::within(gx::fragment_of(nu), gx::Fragment::PosCoreReg)) {
    // No small-certificate argument without positivity: search the whole graph.
    auto fresh = fresh_for(g, mentioned, nu, g.node_count());
    auto a = repair_search(g, nu, o, sorted_values(mentioned), fresh, budget, work);
    if (!a) return std::nullopt;
    DataGraph h = with_data(g, *a);
    if (!gx::satisfies_at(h, *o, nu)) fail(ErrorKind::Precondition, "repair failed re-verification");
    return h;
  }

  auto sf = gx::eliminate_star(g, nu);
  const auto& q = std::get<NodePtr>(sf.query);
  std::size_t k = static_cast<std::size_t>(std::min<std::uint64_t>(gx::c_bound(q), g.node_count()));
  k = std::max<std::size_t>(k, 1);
  auto fresh = fresh_for(g, mentioned, q, k);
  auto vals = sorted_values(mentioned);
  std::vector<NodeId> others;
  for (NodeId v : g.nodes())
    if (v != *o) others.push_back(v);

  std::optional<DataGraph> out;
  for_each_k_subset(others, k - 1, [&](const std::vector<NodeId>& pick) {
    std::set<NodeId> s(pick.begin(), pick.end());
    s.insert(*o);
    DataGraph h = induced_subgraph(sf.graph, s);
    auto a = repair_search(h, q, o, vals, fresh, budget, work);
    if (!a) return false;
    out = with_data(g, *a);
    return true;
  });
  if (out && !gx::satisfies_at(*out, *o, nu)) fail(ErrorKind::Precondition, "repair failed re-verification");
  return out;
}

CostResult clean_origin_expression(const DataGraph& g, NodeId o, const NodePtr& nu, const TransitionCost& cost,
                                   const Budget& budget) {
  require_origin(g, o);
  if (gx::has_path_equality(nu)) fail(ErrorKind::Precondition, "expression must not contain <p = q> comparisons");
  if (!gx::within(gx::fragment_of(nu), gx::Fragment::PosCoreReg))
    fail(ErrorKind::Precondition, "expression must be in the positive core fragment");
  if (gx::satisfies_at(g, o, nu)) return {g, 0};

  auto sf = gx::eliminate_star(g, nu);
  const auto& q = std::get<NodePtr>(sf.query);
  const auto mentioned = gx::mentioned_data_values(q);
  const std::size_t n = g.node_count();
  std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::min<std::uint64_t>(gx::c_bound(q), n)));

  // Per node: observed value, mentioned constants, and the cheapest n + |mentioned| values.
  std::map<NodeId, std::vector<std::pair<std::int64_t, DataValue>>> options;
  for (NodeId v : g.nodes()) {
    const auto& d = g.data_of(v);
    std::set<DataValue> c(mentioned.begin(), mentioned.end());
    c.insert(d);
    for (auto& x : cost.prefix(d, n + mentioned.size())) c.insert(std::move(x));
    auto& opts = options[v];
    for (const auto& x : c) {
      std::int64_t w = cost.delta(d, x);
      if (w < 0) fail(ErrorKind::Precondition, "transition costs must be non-negative");
      opts.emplace_back(w, x);
    }
    std::sort(opts.begin(), opts.end());
  }

  std::uint64_t work = 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::optional<std::map<NodeId, DataValue>> best_assignment;
  std::vector<NodeId> others;
  for (NodeId v : g.nodes())
    if (v != o) others.push_back(v);

  for_each_k_subset(others, k - 1, [&](const std::vector<NodeId>& pick) {
    std::set<NodeId> s(pick.begin(), pick.end());
    s.insert(o);
    DataGraph h = induced_subgraph(sf.graph, s);
    Probe probe(h, q, o, budget, work);
    auto order = bfs_order(h, o);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t spent) -> void {
      if (spent >= best) return;
      Verdict v = probe.check();
      if (v == Verdict::Prune) return;
      if (v == Verdict::Accept) {
        best = spent;
        auto a = probe.assigned();
        for (auto it = a.begin(); it != a.end();) it = it->second == g.data_of(it->first) ? a.erase(it) : std::next(it);
        best_assignment = std::move(a);
        return;
      }
      if (i == order.size()) return;
      NodeId node = order[i];
      for (const auto& [w, x] : options.at(node)) {
        if (spent + w >= best) break;
        probe.set(node, x);
        self(self, i + 1, spent + w);
      }
      probe.set(node, std::nullopt);
    };
    rec(rec, 0, 0);
    return false;
  });
  if (!best_assignment) fail(ErrorKind::Infeasible, "no data assignment satisfies the expression at the origin");
  CostResult r{with_data(g, *best_assignment), best};
  if (!gx::satisfies_at(r.graph, o, nu)) fail(ErrorKind::Precondition, "cleaned graph failed re-verification");
  return r;
}

}  // namespace pudg
