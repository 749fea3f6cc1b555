#include "pudg/gadgets.hpp"

#include "pudg/errors.hpp"
#include "pudg/models.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace pudg {

namespace {

const DataValue kVar = "var", kClause = "clause", kFalse = "F", kTrue = "T";
const Label kLit = "is_literal", kNegLit = "is_literal_negated", kValue = "value", kE1 = "e1", kE2 = "e2",
            kChosen = "chosen", kUnchosen = "unchosen";

std::set<Label> sat_alphabet(SatEncoding enc) {
  if (enc == SatEncoding::Update) return {kLit, kNegLit, kChosen, kUnchosen, kE1, kE2};
  return {kLit, kNegLit, kValue, kE1, kE2};
}

// Variables 1..n, clauses n+1..n+m, then the false and true nodes.
DataGraph formula_skeleton(const Cnf& phi, std::set<Label> alphabet, const Label& pos, const Label& neg) {
  DataGraph g(std::move(alphabet));
  const NodeId n = phi.num_vars, m = phi.clauses.size();
  for (NodeId i = 1; i <= n; ++i) g.add_node(i, kVar);
  for (NodeId j = 1; j <= m; ++j) g.add_node(n + j, kClause);
  g.add_node(n + m + 1, kFalse);
  g.add_node(n + m + 2, kTrue);
  for (NodeId j = 0; j < m; ++j)
    for (int l : phi.clauses[j]) g.add_edge(static_cast<NodeId>(std::abs(l)), l > 0 ? pos : neg, n + j + 1);
  return g;
}

struct Layout {
  std::uint64_t n = 0, m = 0;
  NodeId f = 0, t = 0;
};

// Node ids 1..N with data var^n clause^m F T.
std::optional<Layout> read_layout(const DataGraph& g) {
  Layout L;
  NodeId expect = 1;
  auto it = g.data().begin();
  for (; it != g.data().end() && it->second == kVar; ++it, ++expect) {
    if (it->first != expect) return std::nullopt;
    ++L.n;
  }
  for (; it != g.data().end() && it->second == kClause; ++it, ++expect) {
    if (it->first != expect) return std::nullopt;
    ++L.m;
  }
  if (it == g.data().end() || it->first != expect || it->second != kFalse) return std::nullopt;
  L.f = expect++;
  ++it;
  if (it == g.data().end() || it->first != expect || it->second != kTrue) return std::nullopt;
  L.t = expect;
  if (++it != g.data().end()) return std::nullopt;
  return L;
}

bool is_var(const Layout& L, NodeId v) { return v >= 1 && v <= L.n; }
bool is_clause(const Layout& L, NodeId v) { return v > L.n && v <= L.n + L.m; }

// Clauses read from literal edges; every clause needs exactly three distinct variables.
std::optional<Cnf> read_formula(const DataGraph& g, const Layout& L) {
  Cnf phi;
  phi.num_vars = static_cast<std::uint32_t>(L.n);
  phi.clauses.assign(L.m, {});
  for (const auto& e : g.edges()) {
    if (e.label != kLit && e.label != kNegLit) continue;
    if (!is_var(L, e.from) || !is_clause(L, e.to)) return std::nullopt;
    phi.clauses[e.to - L.n - 1].push_back(e.label == kLit ? static_cast<int>(e.from) : -static_cast<int>(e.from));
  }
  for (auto& c : phi.clauses) std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
  if (!phi.is_3cnf()) return std::nullopt;
  return phi;
}

void require_3cnf(const Cnf& phi) {
  phi.validate();
  if (phi.clauses.empty()) fail(ErrorKind::Precondition, "formula needs at least one clause");
  if (!phi.is_3cnf()) fail(ErrorKind::Precondition, "formula is not 3CNF (three distinct variables per clause)");
}

Rational sat_prior_weight(const DataGraph& g, SatEncoding enc) {
  bool first = false;
  auto d = decode_sat_graph(g, enc, &first);
  if (!d) return 0;
  const auto& [phi, a] = *d;
  BigInt count = formula_graph_count(phi.num_vars, phi.clauses.size());
  if (count == 0) return 0;
  int sat = phi.satisfied_by(a) ? 1 : 0;
  Rational base = diagonal_weight(phi.num_vars, phi.clauses.size()) / Rational(count);
  return base * (first ? 1 + sat : 1 - sat);
}

Prior sat_prior(SatEncoding enc) {
  auto weight = [enc](const DataGraph& g) { return sat_prior_weight(g, enc); };
  auto enumerate = [enc](const DataGraph& observed, const Budget& budget) {
    std::vector<DataGraph> out;
    auto L = read_layout(observed);
    if (!L) return out;
    auto phi = read_formula(observed, *L);
    if (!phi || phi->num_vars > 62) return out;
    if (phi->num_vars + 1 >= 64 || (std::uint64_t{2} << phi->num_vars) > budget.max_candidates)
      fail(ErrorKind::Budget, "assignment graphs exceed the candidate budget");
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << phi->num_vars); ++a)
      for (bool first : {true, false}) out.push_back(encode_sat_graph(*phi, a, first, enc));
    return out;
  };
  return Prior::intensional(weight, enumerate);
}

// Chosen edges may be observed as unchosen, each independently with probability 1/2.
RealizationModel relabel_to_unchosen_model() {
  RealizationModel m;
  m.klass = PiClass::Update;
  m.name = "relabel_to_unchosen";
  m.weight = [](const DataGraph& clean, const DataGraph& obs) -> Rational {
    if (clean.data() != obs.data() || clean.alphabet() != obs.alphabet()) return 0;
    if (clean.edge_count() != obs.edge_count()) return 0;
    std::map<std::pair<NodeId, NodeId>, Label> lc, lo;
    for (const auto& e : clean.edges())
      if (!lc.emplace(std::make_pair(e.from, e.to), e.label).second) return 0;
    for (const auto& e : obs.edges())
      if (!lo.emplace(std::make_pair(e.from, e.to), e.label).second) return 0;
    std::uint64_t free = 0;
    for (const auto& [pair, l] : lc) {
      auto it = lo.find(pair);
      if (it == lo.end()) return 0;
      if (it->second != l && it->second != kUnchosen) return 0;
      free += l != kUnchosen;
    }
    return inv_pow2(free);
  };
  return m;
}

DataGraph sat_observed(const Cnf& phi, SatEncoding enc) {
  DataGraph g = formula_skeleton(phi, sat_alphabet(enc), kLit, kNegLit);
  const NodeId n = phi.num_vars, f = n + phi.clauses.size() + 1, t = f + 1;
  switch (enc) {
    case SatEncoding::Subset: break;
    case SatEncoding::Superset:
      for (NodeId i = 1; i <= n; ++i) g.add_edge(i, kValue, f), g.add_edge(i, kValue, t);
      g.add_edge(f, kE1, t), g.add_edge(f, kE2, t);
      break;
    case SatEncoding::Update:
      for (NodeId i = 1; i <= n; ++i) g.add_edge(i, kUnchosen, f), g.add_edge(i, kUnchosen, t);
      g.add_edge(f, kUnchosen, t);
      break;
  }
  return g;
}

SatGadget make_sat_gadget(const Cnf& phi, SatEncoding enc, RealizationModel model) {
  require_3cnf(phi);
  SatGadget s{Pudg{sat_prior(enc), std::move(model), sat_observed(phi, enc), Budget{}}, inv_pow2(phi.num_vars + 1), 0,
              phi};
  DataGraph any = encode_sat_graph(phi, 0, true, enc);
  s.score_threshold = diagonal_weight(phi.num_vars, phi.clauses.size()) /
                      Rational(formula_graph_count(phi.num_vars, phi.clauses.size())) *
                      s.pudg.model.weight(any, s.pudg.observed);
  return s;
}

}  // namespace

Rational diagonal_weight(std::uint64_t n, std::uint64_t m) {
  std::uint64_t d = n + m;
  return inv_pow2(d * (d + 1) / 2 + m + 1);
}

BigInt formula_graph_count(std::uint64_t n, std::uint64_t m) {
  BigInt per_clause = 8 * binomial(n, 3);
  BigInt c = 2 * pow2(n);
  for (std::uint64_t j = 0; j < m; ++j) c *= per_clause;
  return c;
}

DataGraph encode_sat_graph(const Cnf& phi, std::uint64_t a, bool first_label, SatEncoding enc) {
  DataGraph g = formula_skeleton(phi, sat_alphabet(enc), kLit, kNegLit);
  const NodeId n = phi.num_vars, f = n + phi.clauses.size() + 1, t = f + 1;
  for (NodeId i = 1; i <= n; ++i) {
    bool v = (a >> (i - 1)) & 1u;
    if (enc == SatEncoding::Update) {
      g.add_edge(i, kChosen, v ? t : f);
      g.add_edge(i, kUnchosen, v ? f : t);
    } else {
      g.add_edge(i, kValue, v ? t : f);
    }
  }
  g.add_edge(f, first_label ? kE1 : kE2, t);
  return g;
}

std::optional<std::pair<Cnf, std::uint64_t>> decode_sat_graph(const DataGraph& g, SatEncoding enc,
                                                              bool* first_label) {
  if (g.alphabet() != sat_alphabet(enc)) return std::nullopt;
  auto L = read_layout(g);
  if (!L || L->n > 62) return std::nullopt;
  auto phi = read_formula(g, *L);
  if (!phi) return std::nullopt;
  std::vector<int> chosen(L->n + 1, 0), unchosen(L->n + 1, 0);
  std::uint64_t a = 0;
  int e_edges = 0;
  bool first = false;
  for (const auto& e : g.edges()) {
    if (e.label == kLit || e.label == kNegLit) continue;
    if (e.label == kE1 || e.label == kE2) {
      if (e.from != L->f || e.to != L->t) return std::nullopt;
      ++e_edges;
      first = e.label == kE1;
      continue;
    }
    if (!is_var(*L, e.from) || (e.to != L->f && e.to != L->t)) return std::nullopt;
    if (e.label == kValue || e.label == kChosen) {
      if (chosen[e.from]++) return std::nullopt;
      if (e.to == L->t) a |= std::uint64_t{1} << (e.from - 1);
    } else if (e.label == kUnchosen) {
      if (unchosen[e.from]++) return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  if (e_edges != 1) return std::nullopt;
  for (std::uint64_t i = 1; i <= L->n; ++i) {
    if (chosen[i] != 1) return std::nullopt;
    if (enc == SatEncoding::Update && unchosen[i] != 1) return std::nullopt;
  }
  if (enc == SatEncoding::Update)
    for (const auto& e : g.edges())
      if (e.label == kUnchosen) {
        bool v = (a >> (e.from - 1)) & 1u;
        if (e.to != (v ? L->f : L->t)) return std::nullopt;
      }
  if (first_label) *first_label = first;
  return std::make_pair(*phi, a);
}

SatGadget gadget_sat_subset(const Cnf& phi) {
  return make_sat_gadget(phi, SatEncoding::Subset, uniform_subset_model());
}

SatGadget gadget_sat_superset(const Cnf& phi) {
  return make_sat_gadget(phi, SatEncoding::Superset, edge_addition_model(Rational(1, 2)));
}

SatGadget gadget_sat_update(const Cnf& phi) {
  return make_sat_gadget(phi, SatEncoding::Update, relabel_to_unchosen_model());
}

RepairGadget gadget_isorepair(const Cnf& phi) {
  phi.validate();
  namespace P = gx::path;
  namespace N = gx::node;
  DataGraph g({"pos", "neg", "notClause"});
  const NodeId n = phi.num_vars;
  for (NodeId i = 1; i <= n; ++i) g.add_node(i, kVar).add_edge(i, "notClause", i);
  for (NodeId j = 0; j < phi.clauses.size(); ++j) {
    g.add_node(n + j + 1, kClause);
    for (int l : phi.clauses[j]) g.add_edge(static_cast<NodeId>(std::abs(l)), l > 0 ? "pos" : "neg", n + j + 1);
  }
  auto nu1 = N::disj(N::disj(N::exists(P::concat(P::inverse("pos"), P::test(N::data_eq(kTrue)))),
                             N::exists(P::concat(P::inverse("neg"), P::test(N::data_eq(kFalse))))),
                     N::data_neq(kClause));
  auto nu2 = N::disj(N::exists(P::label("notClause")), N::data_eq(kClause));
  return {std::move(g), N::conj(nu1, nu2)};
}

namespace {
void check_digraph(const Digraph& g, std::size_t start) {
  if (g.n == 0) fail(ErrorKind::Precondition, "graph needs at least one node");
  if (start < 1 || start > g.n) fail(ErrorKind::Precondition, "start node outside 1..n");
  for (auto [u, v] : g.arcs)
    if (u < 1 || u > g.n || v < 1 || v > g.n) fail(ErrorKind::DanglingEndpoint, "arc endpoint outside 1..n");
}
}  // namespace

HamPathGadget gadget_hampath(const Digraph& dg, std::size_t start) {
  check_digraph(dg, start);
  namespace P = gx::path;
  namespace N = gx::node;
  DataGraph g({"down"});
  for (NodeId v = 1; v <= dg.n; ++v) g.add_node(v, "0");
  for (auto [u, v] : dg.arcs) g.add_edge(u, "down", v);
  gx::PathPtr p = P::test(N::data_eq("1"));
  for (std::size_t i = 2; i <= dg.n; ++i)
    p = P::concat(p, P::concat(P::label("down"), P::test(N::data_eq(std::to_string(i)))));
  return {std::move(g), start, N::exists(p)};
}

bool has_hamiltonian_path(const Digraph& g, std::size_t start) {
  check_digraph(g, start);
  std::vector<std::vector<char>> adj(g.n + 1, std::vector<char>(g.n + 1, 0));
  for (auto [u, v] : g.arcs) adj[u][v] = 1;
  std::vector<char> used(g.n + 1, 0);
  auto rec = [&](auto&& self, std::size_t v, std::size_t depth) -> bool {
    if (depth == g.n) return true;
    for (std::size_t w = 1; w <= g.n; ++w)
      if (!used[w] && adj[v][w]) {
        used[w] = 1;
        if (self(self, w, depth + 1)) return true;
        used[w] = 0;
      }
    return false;
  };
  used[start] = 1;
  return rec(rec, start, 1);
}

namespace {

const Label kAssigned = "assigned";

DataGraph majsat_base(const Cnf& phi) { return formula_skeleton(phi, {"pos", "neg", kAssigned}, "pos", "neg"); }

DataGraph majsat_world(const DataGraph& base, std::uint64_t n, std::uint64_t a) {
  DataGraph g = base;
  NodeId f = base.max_node_id() - 1, t = f + 1;
  for (NodeId i = 1; i <= n; ++i) g.add_edge(i, kAssigned, (a >> (i - 1)) & 1u ? t : f);
  return g;
}

// Uniform over the 2^n assignment worlds of the formula.
Prior majsat_prior(const Cnf& phi) {
  DataGraph base = majsat_base(phi);
  const std::uint64_t n = phi.num_vars;
  auto weight = [base, n](const DataGraph& g) -> Rational {
    if (g.data() != base.data() || g.alphabet() != base.alphabet()) return 0;
    if (g.edge_count() != base.edge_count() + n) return 0;
    NodeId f = base.max_node_id() - 1, t = f + 1;
    std::vector<int> seen(n + 1, 0);
    for (const auto& e : g.edges()) {
      if (base.has_edge(e)) continue;
      if (e.label != kAssigned || e.from < 1 || e.from > n || (e.to != f && e.to != t)) return 0;
      if (seen[e.from]++) return 0;
    }
    for (const auto& e : base.edges())
      if (!g.has_edge(e)) return 0;
    return inv_pow2(n);
  };
  auto enumerate = [base, n](const DataGraph&, const Budget& budget) {
    if (n >= 63 || (std::uint64_t{1} << n) > budget.max_candidates)
      fail(ErrorKind::Budget, "assignment worlds exceed the candidate budget");
    std::vector<DataGraph> out;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) out.push_back(majsat_world(base, n, a));
    return out;
  };
  return Prior::intensional(weight, enumerate);
}

MajsatGadget make_majsat(const Cnf& phi, DataGraph observed, RealizationModel model) {
  phi.validate();
  if (phi.num_vars == 0) fail(ErrorKind::Precondition, "formula needs at least one variable");
  namespace P = gx::path;
  namespace N = gx::node;
  auto witness = N::disj(
      N::exists(P::concat(P::inverse("pos"), P::concat(P::label(kAssigned), P::test(N::data_eq(kTrue))))),
      N::exists(P::concat(P::inverse("neg"), P::concat(P::label(kAssigned), P::test(N::data_eq(kFalse))))));
  auto query = N::disj(N::negate(N::data_eq(kClause)), witness);
  auto positive = N::disj(N::disj(N::disj(N::data_eq(kVar), N::data_eq(kTrue)), N::data_eq(kFalse)), witness);
  return {Pudg{majsat_prior(phi), std::move(model), std::move(observed), Budget{}}, query, positive, Rational(1, 2)};
}

}  // namespace

MajsatGadget gadget_majsat_subset(const Cnf& phi) {
  phi.validate();
  return make_majsat(phi, majsat_base(phi), uniform_subset_model());
}

MajsatGadget gadget_majsat_superset(const Cnf& phi) {
  phi.validate();
  DataGraph obs = majsat_base(phi);
  NodeId f = obs.max_node_id() - 1, t = f + 1;
  for (NodeId i = 1; i <= phi.num_vars; ++i) obs.add_edge(i, kAssigned, f).add_edge(i, kAssigned, t);
  return make_majsat(phi, std::move(obs), edge_addition_model(Rational(1, 2)));
}

}  // namespace pudg
