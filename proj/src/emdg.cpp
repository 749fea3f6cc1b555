#include "pudg/emdg.hpp"

#include "pudg/errors.hpp"
#include "pudg/parallel.hpp"

#include <algorithm>

namespace pudg {

const char* class_name(PiClass c) {
  switch (c) {
    case PiClass::Subset: return "subset";
    case PiClass::Superset: return "superset";
    case PiClass::Update: return "update";
    case PiClass::NodeUpdate: return "node_update";
    case PiClass::General: return "general";
  }
  return "?";
}

PiClass parse_class(const std::string& s) {
  for (PiClass c : {PiClass::Subset, PiClass::Superset, PiClass::Update, PiClass::NodeUpdate, PiClass::General})
    if (s == class_name(c)) return c;
  if (s == "nodeupdate" || s == "node-update") return PiClass::NodeUpdate;
  fail(ErrorKind::Format, "unknown model class '" + s + "'");
}

std::set<DataValue> KDataPrior::candidates(const DataValue& observed) const {
  auto it = table.find(observed);
  if (it == table.end()) return {observed};
  return it->second;
}

void KDataPrior::validate() const {
  for (const auto& [c, vals] : table) {
    if (vals.size() > k) fail(ErrorKind::Precondition, "k-data-prior lists more than k values for '" + c + "'");
    for (const auto& v : vals)
      if (v.empty()) fail(ErrorKind::Format, "empty data value in k-data-prior");
  }
}

// ---- Prior ----

struct Prior::State {
  bool is_explicit = false;
  std::vector<std::pair<DataGraph, Rational>> support;
  std::map<DataGraph, Rational, CanonicalLess> lookup;
  PriorWeight weight;
  SupportEnumerator enumerate;
};

Prior Prior::explicit_support(std::vector<std::pair<DataGraph, Rational>> support) {
  auto s = std::make_shared<State>();
  s->is_explicit = true;
  Rational total = 0;
  for (const auto& [g, w] : support) {
    if (w <= 0) fail(ErrorKind::Precondition, "explicit prior weights must be positive");
    if (!s->lookup.emplace(g, w).second) fail(ErrorKind::Precondition, "explicit prior lists a graph twice");
    total += w;
  }
  if (total != 1) fail(ErrorKind::Precondition, "explicit prior weights sum to " + to_string(total) + ", not 1");
  std::sort(support.begin(), support.end(),
            [](const auto& a, const auto& b) { return canonical_compare(a.first, b.first) < 0; });
  s->support = std::move(support);
  Prior p;
  p.s_ = std::move(s);
  return p;
}

Prior Prior::intensional(PriorWeight weight, SupportEnumerator enumerate) {
  if (!weight) fail(ErrorKind::Precondition, "intensional prior needs a weight oracle");
  auto s = std::make_shared<State>();
  s->weight = std::move(weight);
  s->enumerate = std::move(enumerate);
  Prior p;
  p.s_ = std::move(s);
  return p;
}

Rational Prior::weight(const DataGraph& g) const {
  if (s_->is_explicit) {
    auto it = s_->lookup.find(g);
    return it == s_->lookup.end() ? Rational(0) : it->second;
  }
  return s_->weight(g);
}

bool Prior::is_explicit() const { return s_->is_explicit; }
bool Prior::has_enumerator() const { return s_->is_explicit || static_cast<bool>(s_->enumerate); }

std::vector<DataGraph> Prior::enumerate(const DataGraph& observed, const Budget& budget) const {
  if (s_->is_explicit) {
    if (s_->support.size() > budget.max_candidates)
      fail(ErrorKind::Budget, "explicit prior support exceeds the candidate budget");
    std::vector<DataGraph> out;
    for (const auto& [g, _] : s_->support) out.push_back(g);
    return out;
  }
  if (!s_->enumerate) fail(ErrorKind::Unsupported, "prior has no support enumerator");
  return s_->enumerate(observed, budget);
}

const std::vector<std::pair<DataGraph, Rational>>& Prior::support() const {
  if (!s_->is_explicit) fail(ErrorKind::Unsupported, "support() is only available for explicit priors");
  return s_->support;
}

Prior Prior::scaled(const Rational& lambda) const {
  if (lambda <= 0) fail(ErrorKind::Precondition, "scaling factor must be positive");
  Prior base = *this;
  SupportEnumerator en;
  if (has_enumerator())
    en = [base](const DataGraph& obs, const Budget& b) { return base.enumerate(obs, b); };
  return intensional([base, lambda](const DataGraph& g) { return base.weight(g) * lambda; }, en);
}

// ---- class relations ----

namespace {

bool same_label_counts(const DataGraph& a, const DataGraph& b) {
  std::map<std::pair<NodeId, NodeId>, int> diff;
  for (const auto& e : a.edges()) ++diff[{e.from, e.to}];
  for (const auto& e : b.edges()) --diff[{e.from, e.to}];
  return std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

bool class_relation_holds(PiClass klass, const DataGraph& clean, const DataGraph& observed) {
  switch (klass) {
    case PiClass::Subset: return clean.alphabet() == observed.alphabet() && subgraph_leq(observed, clean);
    case PiClass::Superset: return clean.alphabet() == observed.alphabet() && subgraph_leq(clean, observed);
    case PiClass::NodeUpdate: return equiv_up_to_data(clean, observed);
    case PiClass::Update: return clean.nodes() == observed.nodes() && same_label_counts(clean, observed);
    case PiClass::General: return true;
  }
  return false;
}

bool validate_class(const RealizationModel& model, const std::vector<DataGraph>& cleans,
                    const std::vector<DataGraph>& observeds) {
  for (const auto& g : cleans)
    for (const auto& h : observeds)
      if (model.weight(g, h) > 0 && !class_relation_holds(model.klass, g, h)) return false;
  return true;
}

// ---- cosupport ----

namespace {

void check_budget(const BigInt& bound, const Budget& budget, const char* what) {
  if (bound > budget.max_candidates)
    fail(ErrorKind::Budget, std::string(what) + ": " + bound.str() + " candidates exceed the budget of " +
                                std::to_string(budget.max_candidates));
}

// Calls f(chosen) for every subset of [0, n) with at most k elements.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    f(chosen);
    if (chosen.size() == k) return;
    for (std::size_t i = start; i < n; ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<DataGraph> subset_candidates(const RealizationModel& m, const DataGraph& obs, const Budget& budget) {
  if (m.params.node_deletions)
    fail(ErrorKind::Unsupported, "node-deleting subset models need an explicit prior or a support enumerator");
  auto missing = absent_edges(obs);
  std::size_t k = missing.size();
  if (m.params.max_added_edges) {
    k = std::min<std::size_t>(k, *m.params.max_added_edges);
  } else if (missing.size() > budget.exponent_cap) {
    fail(ErrorKind::Budget, "subset cosupport over " + std::to_string(missing.size()) +
                                " missing edges exceeds the exponent cap " + std::to_string(budget.exponent_cap));
  }
  check_budget(cosupport_size_bound(PiClass::Subset, m.params, obs), budget, "subset cosupport");
  std::vector<DataGraph> out;
  for_each_subset(missing.size(), k, [&](const std::vector<std::size_t>& idx) {
    DataGraph g = obs;
    for (auto i : idx) g.add_edge(missing[i].from, missing[i].label, missing[i].to);
    out.push_back(std::move(g));
  });
  return out;
}

std::vector<DataGraph> superset_candidates(const RealizationModel& m, const DataGraph& obs, const Budget& budget) {
  const auto& p = m.params;
  std::size_t elements = obs.edge_count() + (p.node_additions ? obs.node_count() : 0);
  if (!p.max_removed && elements > budget.exponent_cap)
    fail(ErrorKind::Budget, "superset cosupport over " + std::to_string(elements) +
                                " removable elements exceeds the exponent cap");
  check_budget(cosupport_size_bound(PiClass::Superset, p, obs), budget, "superset cosupport");
  std::uint64_t c = p.max_removed.value_or(elements);
  auto nodes = obs.nodes();
  std::size_t max_nodes = p.node_additions ? std::min<std::size_t>(nodes.size(), c) : 0;
  std::vector<DataGraph> out;
  for_each_subset(nodes.size(), max_nodes, [&](const std::vector<std::size_t>& idx) {
    DataGraph base = obs;
    for (auto i : idx) base.remove_node(nodes[i]);
    std::uint64_t used = idx.size() + (obs.edge_count() - base.edge_count());
    if (used > c) return;
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for_each_subset(edges.size(), std::min<std::uint64_t>(edges.size(), c - used),
                    [&](const std::vector<std::size_t>& eidx) {
                      DataGraph g = base;
                      for (auto i : eidx) g.remove_edge(edges[i]);
                      out.push_back(std::move(g));
                    });
  });
  return out;
}

// Data reassignments of at most z nodes, each to f(D(v)) minus its current value.
std::vector<DataGraph> data_variants(const DataGraph& g, const KDataPrior& f, std::uint64_t z) {
  auto nodes = g.nodes();
  std::vector<std::vector<DataValue>> options;
  for (NodeId v : nodes) {
    std::vector<DataValue> o;
    for (const auto& d : f.candidates(g.data_of(v)))
      if (d != g.data_of(v)) o.push_back(d);
    options.push_back(std::move(o));
  }
  std::vector<DataGraph> out;
  DataGraph cur = g;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t left) -> void {
    out.push_back(cur);
    if (left == 0) return;
    for (std::size_t i = start; i < nodes.size(); ++i) {
      DataValue keep = cur.data_of(nodes[i]);
      for (const auto& d : options[i]) {
        cur.set_data(nodes[i], d);
        self(self, i + 1, left - 1);
      }
      cur.set_data(nodes[i], keep);
    }
  };
  rec(rec, 0, z);
  return out;
}

std::vector<DataGraph> node_update_candidates(const RealizationModel& m, const DataGraph& obs, const Budget& budget) {
  if (!m.params.data_prior) fail(ErrorKind::Unsupported, "node-update cosupport needs a k-data-prior");
  check_budget(cosupport_size_bound(PiClass::NodeUpdate, m.params, obs), budget, "node-update cosupport");
  return data_variants(obs, *m.params.data_prior, m.params.max_data_updates);
}

std::vector<DataGraph> update_candidates(const RealizationModel& m, const DataGraph& obs, const Budget& budget) {
  check_budget(cosupport_size_bound(PiClass::Update, m.params, obs), budget, "update cosupport");
  std::vector<Edge> edges(obs.edges().begin(), obs.edges().end());
  std::vector<DataGraph> relabeled;
  DataGraph cur = obs;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t left) -> void {
    relabeled.push_back(cur);
    if (left == 0) return;
    for (std::size_t i = start; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      for (const auto& l : obs.alphabet()) {
        Edge moved{e.from, l, e.to};
        if (cur.has_edge(moved) || obs.has_edge(moved)) continue;
        cur.remove_edge(e);
        cur.add_edge(moved.from, moved.label, moved.to);
        self(self, i + 1, left - 1);
        cur.remove_edge(moved);
        cur.add_edge(e.from, e.label, e.to);
      }
    }
  };
  rec(rec, 0, m.params.max_relabels);
  if (!m.params.data_prior) return relabeled;
  std::vector<DataGraph> out;
  for (const auto& g : relabeled)
    for (auto& h : data_variants(g, *m.params.data_prior, m.params.max_data_updates)) out.push_back(std::move(h));
  return out;
}

void canonicalize(std::vector<DataGraph>& gs) {
  std::sort(gs.begin(), gs.end(), CanonicalLess{});
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
}

}  // namespace

BigInt cosupport_size_bound(PiClass klass, const ModelParams& p, const DataGraph& obs) {
  std::uint64_t n = obs.node_count(), labels = obs.alphabet().size();
  switch (klass) {
    case PiClass::Subset: {
      if (p.node_deletions) fail(ErrorKind::Unsupported, "no closed-form bound for node-deleting subset models");
      std::uint64_t missing = missing_edges(obs);
      if (!p.max_added_edges) return pow2(missing);
      BigInt s = 0;
      for (std::uint64_t i = 0; i <= std::min(*p.max_added_edges, missing); ++i) s += binomial(missing, i);
      return s;
    }
    case PiClass::Superset: {
      if (p.max_removed) {
        BigInt s = 0;
        std::uint64_t elements = obs.edge_count() + (p.node_additions ? n : 0);
        for (std::uint64_t j = 0; j <= std::min(*p.max_removed, elements); ++j) s += binomial(elements, j);
        return s;
      }
      if (!p.node_additions) return pow2(n * n * labels);
      BigInt s = 0;
      for (std::uint64_t i = 0; i <= n; ++i) s += binomial(n, i) * pow2(i * i * labels);
      return s;
    }
    case PiClass::NodeUpdate:
    case PiClass::Update: {
      std::uint64_t k = p.data_prior ? p.data_prior->k : 1;
      std::uint64_t z = p.data_prior ? p.max_data_updates : 0;
      BigInt s = 0;
      for (std::uint64_t i = 0; i <= std::min(z, n); ++i) s += binomial(n, i) * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(i));
      if (klass == PiClass::NodeUpdate) return s;
      BigInt r = 0;
      std::uint64_t m = obs.edge_count();
      std::uint64_t alt = labels > 0 ? labels - 1 : 0;
      for (std::uint64_t i = 0; i <= std::min(p.max_relabels, m); ++i)
        r += binomial(m, i) * boost::multiprecision::pow(BigInt(alt), static_cast<unsigned>(i));
      return r * s;
    }
    case PiClass::General: break;
  }
  fail(ErrorKind::Unsupported, "general models have no cosupport bound");
}

std::vector<DataGraph> cosupport(const RealizationModel& model, const DataGraph& observed, const Budget& budget) {
  std::vector<DataGraph> raw;
  switch (model.klass) {
    case PiClass::Subset: raw = subset_candidates(model, observed, budget); break;
    case PiClass::Superset: raw = superset_candidates(model, observed, budget); break;
    case PiClass::NodeUpdate: raw = node_update_candidates(model, observed, budget); break;
    case PiClass::Update: raw = update_candidates(model, observed, budget); break;
    case PiClass::General:
      fail(ErrorKind::Unsupported, "general realization models need a prior with a support enumerator");
  }
  std::vector<char> keep(raw.size(), 0);
  parallel_for(raw.size(), budget.jobs, [&](std::size_t i) { keep[i] = model.weight(raw[i], observed) > 0; });
  std::vector<DataGraph> out;
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (keep[i]) out.push_back(std::move(raw[i]));
  canonicalize(out);
  return out;
}

std::vector<Candidate> scored_candidates(const Pudg& pudg) {
  std::vector<DataGraph> cands = pudg.prior.has_enumerator() ? pudg.prior.enumerate(pudg.observed, pudg.budget)
                                                             : cosupport(pudg.model, pudg.observed, pudg.budget);
  if (cands.size() > pudg.budget.max_candidates)
    fail(ErrorKind::Budget, std::to_string(cands.size()) + " candidates exceed the budget");
  canonicalize(cands);
  std::vector<Rational> scores(cands.size());
  parallel_for(cands.size(), pudg.budget.jobs, [&](std::size_t i) {
    Rational r = pudg.model.weight(cands[i], pudg.observed);
    scores[i] = r > 0 ? Rational(r * pudg.prior.weight(cands[i])) : Rational(0);
  });
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (scores[i] > 0) out.push_back({std::move(cands[i]), std::move(scores[i])});
  return out;
}

std::vector<std::pair<DataGraph, Rational>> inverse_realization(const Pudg& pudg) {
  auto cands = scored_candidates(pudg);
  Rational total = 0;
  for (const auto& c : cands) total += c.score;
  std::vector<std::pair<DataGraph, Rational>> out;
  for (auto& c : cands) out.emplace_back(std::move(c.graph), c.score / total);
  return out;
}

}  // namespace pudg
