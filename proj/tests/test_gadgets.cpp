#include "oracle.hpp"
#include "pudg/cleaning.hpp"
#include "pudg/cnf.hpp"
#include "pudg/errors.hpp"
#include "pudg/gadgets.hpp"
#include "pudg/gxpath/fragment.hpp"
#include "pudg/pqa.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace pudg;
using namespace pudg::testing;

namespace {

using oracle::hampath_oracle;
using oracle::sat_oracle;

std::uint64_t count_oracle(const Cnf& f) { return oracle::count_models_oracle(f); }

Cnf unit_pos() { return Cnf{1, {{1}}}; }
Cnf unit_contra() { return Cnf{1, {{1}, {-1}}}; }

}  // namespace

TEST(Cnf, DimacsRoundTrip) {
  auto f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  EXPECT_EQ(f.num_vars, 3u);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -2}, {2, 3, -1}}));
  EXPECT_EQ(parse_dimacs(to_dimacs(f)), f);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 5 0\n"), Error);
  EXPECT_THROW(parse_dimacs("1 2 0\n"), Error);
}

TEST(Cnf, ThreeCnfCheck) {
  EXPECT_TRUE((Cnf{3, {{1, -2, 3}}}).is_3cnf());
  EXPECT_FALSE((Cnf{3, {{1, -1, 3}}}).is_3cnf());
  EXPECT_FALSE((Cnf{3, {{1, 2}}}).is_3cnf());
}

TEST(Cnf, PaddingIsEquisatisfiable) {
  Rng rng(base_seed() + 70);
  for (int t = 0; t < 200; ++t) {
    auto f = random_cnf(rng, static_cast<std::uint32_t>(uniform(rng, 1, 5)), uniform(rng, 1, 5), 3);
    auto g = pad_to_3cnf(f);
    EXPECT_TRUE(g.is_3cnf()) << to_dimacs(g);
    EXPECT_EQ(sat_oracle(f), sat_oracle(g)) << to_dimacs(f);
    EXPECT_EQ(brute_force_sat(f), sat_oracle(f));
    EXPECT_EQ(count_models(f), count_oracle(f));
  }
  EXPECT_TRUE(pad_to_3cnf(unit_pos()).is_3cnf());
  EXPECT_FALSE(brute_force_sat(pad_to_3cnf(unit_contra())));
  EXPECT_FALSE(brute_force_sat(pad_to_3cnf(Cnf{1, {{}}})));
}

TEST(DiagonalWeights, TableEntries) {
  EXPECT_EQ(diagonal_weight(0, 0), Rational(1, 2));
  EXPECT_EQ(diagonal_weight(1, 0), Rational(1, 4));
  EXPECT_EQ(diagonal_weight(0, 1), Rational(1, 8));
  EXPECT_EQ(diagonal_weight(2, 0), Rational(1, 16));
}

TEST(DiagonalWeights, PrefixSumsTelescope) {
  for (std::uint64_t K = 1; K <= 12; ++K) {
    Rational s = 0;
    for (std::uint64_t d = 0; d < K; ++d)
      for (std::uint64_t m = 0; m <= d; ++m) s += diagonal_weight(d - m, m);
    EXPECT_EQ(s, 1 - diagonal_weight(0, K - 1));
    EXPECT_EQ(s, 1 - inv_pow2(K * (K + 1) / 2));
  }
  // every cell gets a distinct power
  std::set<Rational> seen;
  for (std::uint64_t n = 0; n < 8; ++n)
    for (std::uint64_t m = 0; m < 8; ++m) EXPECT_TRUE(seen.insert(diagonal_weight(n, m)).second);
}

TEST(DiagonalWeights, GraphCount) {
  EXPECT_EQ(formula_graph_count(3, 1), BigInt(128));
  EXPECT_EQ(formula_graph_count(4, 2), BigInt(2 * 16 * 32 * 32));
  EXPECT_EQ(formula_graph_count(2, 1), BigInt(0));
}

TEST(SatGadget, EncodingRoundTrip) {
  Rng rng(base_seed() + 71);
  for (int t = 0; t < 30; ++t) {
    auto phi = random_3cnf(rng, static_cast<std::uint32_t>(uniform(rng, 3, 5)), uniform(rng, 1, 4));
    std::uint64_t a = uniform(rng, 0, (std::size_t{1} << phi.num_vars) - 1);
    for (auto enc : {SatEncoding::Subset, SatEncoding::Superset, SatEncoding::Update})
      for (bool first : {true, false}) {
        bool got = !first;
        auto d = decode_sat_graph(encode_sat_graph(phi, a, first, enc), enc, &got);
        ASSERT_TRUE(d);
        EXPECT_EQ(d->second, a);
        EXPECT_EQ(got, first);
        EXPECT_EQ(d->first.clauses.size(), phi.clauses.size());
        EXPECT_EQ(sat_oracle(d->first), sat_oracle(phi));
      }
  }
}

TEST(SatGadget, RejectsNon3Cnf) {
  EXPECT_THROW(gadget_sat_subset(unit_pos()), Error);
  EXPECT_THROW(gadget_sat_update(Cnf{3, {}}), Error);
}

TEST(SatGadget, HandPickedPairs) {
  auto sat = pad_to_3cnf(unit_pos());
  auto unsat = pad_to_3cnf(unit_contra());
  for (auto make : {gadget_sat_subset, gadget_sat_superset, gadget_sat_update}) {
    auto s = make(sat);
    EXPECT_TRUE(clean_bound(s.pudg, s.bound));
    auto u = make(unsat);
    EXPECT_FALSE(clean_bound(u.pudg, u.bound));
  }
}

TEST(SatGadget, CleanFindsSatisfyingAssignment) {
  Cnf phi{4, {{1, 2, 3}, {-1, -2, 4}, {-2, 3, -4}}};
  ASSERT_TRUE(sat_oracle(phi));
  auto s = gadget_sat_subset(phi);
  auto r = clean(s.pudg);
  bool first = false;
  auto d = decode_sat_graph(r.best, SatEncoding::Subset, &first);
  ASSERT_TRUE(d);
  EXPECT_TRUE(phi.satisfied_by(d->second));
  EXPECT_TRUE(first);
  EXPECT_GT(*r.probability, s.bound);
  EXPECT_GT(r.score, s.score_threshold);
}

TEST(SatGadget, AgreesWithSatOracleRandom) {
  Rng rng(base_seed() + 72);
  for (int t = 0; t < 40; ++t) {
    auto phi = random_3cnf(rng, static_cast<std::uint32_t>(uniform(rng, 3, 5)), uniform(rng, 1, 6));
    bool want = sat_oracle(phi);
    EXPECT_EQ(clean_bound(gadget_sat_subset(phi).pudg, gadget_sat_subset(phi).bound), want) << to_dimacs(phi);
    auto sup = gadget_sat_superset(phi);
    EXPECT_EQ(clean_bound(sup.pudg, sup.bound), want) << to_dimacs(phi);
    auto up = gadget_sat_update(phi);
    EXPECT_EQ(clean_bound(up.pudg, up.bound), want) << to_dimacs(phi);
  }
}

TEST(SatGadget, ModelsValidateTheirClass) {
  auto phi = pad_to_3cnf(unit_pos());
  for (auto make : {gadget_sat_subset, gadget_sat_superset, gadget_sat_update}) {
    auto s = make(phi);
    auto cands = s.pudg.prior.enumerate(s.pudg.observed, Budget{});
    ASSERT_EQ(cands.size(), std::size_t{2} << phi.num_vars);
    EXPECT_TRUE(validate_class(s.pudg.model, cands, {s.pudg.observed}));
    for (const auto& g : cands) EXPECT_GT(s.pudg.model.weight(g, s.pudg.observed), 0);
  }
  auto up = gadget_sat_update(phi);
  auto cands = up.pudg.prior.enumerate(up.pudg.observed, Budget{});
  auto wrong = up.pudg.model;
  wrong.klass = PiClass::NodeUpdate;
  EXPECT_FALSE(validate_class(wrong, cands, {up.pudg.observed}));
}

TEST(SatGadget, PriorMassOnFormulaCell) {
  // Over one formula, the 2*2^n assignment graphs carry T(n,m) * 2^n * 2 / C(n,m).
  Cnf phi{3, {{1, 2, 3}}};
  auto s = gadget_sat_subset(phi);
  Rational sum = 0;
  for (const auto& g : s.pudg.prior.enumerate(s.pudg.observed, Budget{})) sum += s.pudg.prior.weight(g);
  EXPECT_EQ(sum, diagonal_weight(3, 1) * Rational(16) / Rational(formula_graph_count(3, 1)));
}

TEST(IsoRepairGadget, MentionsExpectedValues) {
  auto r = gadget_isorepair(pad_to_3cnf(unit_pos()));
  EXPECT_EQ(gx::mentioned_data_values(gx::Query(r.query)), (std::set<DataValue>{"F", "T", "clause"}));
}

TEST(IsoRepairGadget, Tiny) {
  auto s = gadget_isorepair(pad_to_3cnf(unit_pos()));
  EXPECT_TRUE(isomorphic_repair(s.graph, s.query, std::nullopt));
  auto u = gadget_isorepair(pad_to_3cnf(unit_contra()));
  EXPECT_FALSE(isomorphic_repair(u.graph, u.query, std::nullopt));
  auto e = gadget_isorepair(Cnf{1, {{}}});
  EXPECT_FALSE(isomorphic_repair(e.graph, e.query, std::nullopt));
}

TEST(IsoRepairGadget, AgreesWithSatOracleRandom) {
  Rng rng(base_seed() + 73);
  for (int t = 0; t < 30; ++t) {
    auto phi = random_3cnf(rng, static_cast<std::uint32_t>(uniform(rng, 3, 4)), uniform(rng, 1, 5));
    auto r = gadget_isorepair(phi);
    auto h = isomorphic_repair(r.graph, r.query, std::nullopt);
    EXPECT_EQ(h.has_value(), sat_oracle(phi)) << to_dimacs(phi);
    if (h) {
      EXPECT_TRUE(oracle::holds_global(*h, gx::Query(r.query)));
    }
  }
}

TEST(HamPathGadget, PathAndDisconnected) {
  Digraph path{4, {{1, 2}, {2, 3}, {3, 4}}};
  auto g = gadget_hampath(path, 1);
  EXPECT_TRUE(has_hamiltonian_path(path, 1));
  EXPECT_TRUE(isomorphic_repair(g.graph, g.query, g.origin));
  auto g2 = gadget_hampath(path, 2);
  EXPECT_FALSE(isomorphic_repair(g2.graph, g2.query, g2.origin));
  Digraph split{4, {{1, 2}, {3, 4}}};
  EXPECT_FALSE(has_hamiltonian_path(split, 1));
  auto s = gadget_hampath(split, 1);
  EXPECT_FALSE(isomorphic_repair(s.graph, s.query, s.origin));
}

TEST(HamPathGadget, AgreesWithPermutationSearchRandom) {
  Rng rng(base_seed() + 74);
  for (int t = 0; t < 40; ++t) {
    Digraph d{uniform(rng, 1, 5), {}};
    for (std::size_t u = 1; u <= d.n; ++u)
      for (std::size_t v = 1; v <= d.n; ++v)
        if (u != v && coin(rng, 0.4)) d.arcs.push_back({u, v});
    std::size_t start = uniform(rng, 1, d.n);
    bool want = hampath_oracle(d, start);
    EXPECT_EQ(has_hamiltonian_path(d, start), want);
    auto g = gadget_hampath(d, start);
    auto r = isomorphic_repair(g.graph, g.query, g.origin);
    EXPECT_EQ(r.has_value(), want);
  }
}

TEST(MajsatGadget, HandPicked) {
  for (auto make : {gadget_majsat_subset, gadget_majsat_superset}) {
    auto half = make(Cnf{1, {{1}}});
    EXPECT_EQ(global_pqa(half.pudg, gx::Query(half.query)).probability, Rational(1, 2));
    EXPECT_FALSE(pqa_bound(half.pudg, gx::Query(half.query), half.bound));
    auto taut = make(Cnf{1, {{1, -1}}});
    EXPECT_TRUE(pqa_bound(taut.pudg, gx::Query(taut.query), taut.bound));
    EXPECT_TRUE(pqa_bound(taut.pudg, gx::Query(taut.positive_query), taut.bound));
  }
}

TEST(MajsatGadget, PositiveVariantIsPositive) {
  auto g = gadget_majsat_subset(Cnf{2, {{1, -2}}});
  EXPECT_TRUE(gx::within(gx::fragment_of(gx::Query(g.positive_query)), gx::Fragment::PosReg));
  EXPECT_FALSE(gx::within(gx::fragment_of(gx::Query(g.query)), gx::Fragment::PosReg));
}

TEST(MajsatGadget, AgreesWithCountingOracleRandom) {
  Rng rng(base_seed() + 75);
  for (int t = 0; t < 30; ++t) {
    auto n = static_cast<std::uint32_t>(uniform(rng, 1, 6));
    auto phi = random_cnf(rng, n, uniform(rng, 1, 4), 3);
    std::uint64_t models = count_oracle(phi);
    Rational frac(static_cast<long>(models), static_cast<long>(std::uint64_t{1} << n));
    for (auto make : {gadget_majsat_subset, gadget_majsat_superset}) {
      auto g = make(phi);
      EXPECT_EQ(global_pqa(g.pudg, gx::Query(g.query)).probability, frac) << to_dimacs(phi);
      EXPECT_EQ(global_pqa(g.pudg, gx::Query(g.positive_query)).probability, frac) << to_dimacs(phi);
      EXPECT_EQ(pqa_bound(g.pudg, gx::Query(g.query), g.bound), 2 * models > (std::uint64_t{1} << n));
    }
  }
}

TEST(MajsatGadget, ModelsValidateTheirClass) {
  Cnf phi{2, {{1, 2}}};
  for (auto make : {gadget_majsat_subset, gadget_majsat_superset}) {
    auto g = make(phi);
    auto worlds = g.pudg.prior.enumerate(g.pudg.observed, Budget{});
    EXPECT_EQ(worlds.size(), 4u);
    EXPECT_TRUE(validate_class(g.pudg.model, worlds, {g.pudg.observed}));
  }
}
