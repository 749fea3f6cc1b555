#include "oracle.hpp"
#include "pudg/errors.hpp"
#include "pudg/gxpath/parser.hpp"
#include "pudg/pqa.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace pudg;
using namespace pudg::testing;
namespace N = pudg::gx::node;
namespace P = pudg::gx::path;

namespace {

const gx::Query alpha() { return gx::parse_query("(friend + follows){0,3}"); }

// Random explicit PUDG over supergraphs of a random observation.
Pudg random_explicit_pudg(Rng& rng) {
  auto obs = random_graph(rng, uniform(rng, 1, 4), {"a", "b"}, {"x", "y"}, 0.25);
  std::vector<DataGraph> gs = {obs};
  std::size_t extra = uniform(rng, 0, 4);
  for (std::size_t i = 0; i < extra; ++i) {
    DataGraph h = obs;
    for (const auto& e : absent_edges(obs))
      if (coin(rng, 0.25)) h.add_edge(e.from, e.label, e.to);
    gs.push_back(h);
  }
  return Pudg{random_explicit_prior(rng, gs), edge_deletion_model(Rational(1, 3)), obs, {}};
}

// Posterior by hand: explicit prior times model weight, normalized.
Rational oracle_pqa(const Pudg& p, const gx::Query& q, bool global) {
  Rational num = 0, den = 0;
  for (const auto& [g, w] : p.prior.support()) {
    Rational s = w * p.model.weight(g, p.observed);
    den += s;
    if (global ? oracle::holds_global(g, q) : oracle::holds_somewhere(g, q)) num += s;
  }
  return num / den;
}

}  // namespace

TEST(Pqa, ThreeWorldsGlobal) {
  auto w = three_worlds();
  auto a = global_pqa(w.pudg, alpha());
  EXPECT_EQ(a.probability, Rational(1, 10));
  EXPECT_EQ(a.mass_accounted, 1);
  EXPECT_EQ(a.candidates_examined, 3u);
}

TEST(Pqa, ThreeWorldsComplement) {
  auto w = three_worlds();
  auto neg = gx::Query(P::complement(std::get<gx::PathPtr>(alpha())));
  EXPECT_EQ(existential_pqa(w.pudg, neg).probability, Rational(9, 10));
  EXPECT_EQ(global_pqa(w.pudg, neg).probability, 0);
  EXPECT_EQ(existential_pqa(w.pudg, alpha()).probability, 1);
}

TEST(Pqa, Bounds) {
  auto w = three_worlds();
  EXPECT_TRUE(pqa_bound(w.pudg, alpha(), Rational(1, 20)));
  EXPECT_FALSE(pqa_bound(w.pudg, alpha(), Rational(1, 10)));
  EXPECT_FALSE(pqa_bound(w.pudg, gx::Query(N::exists(P::eps())), 1));
}

TEST(Pqa, TautologyAndContradiction) {
  auto w = three_worlds();
  EXPECT_EQ(global_pqa(w.pudg, gx::Query(N::exists(P::eps()))).probability, 1);
  EXPECT_EQ(existential_pqa(w.pudg, gx::Query(N::conj(N::data_eq("x"), N::data_neq("x")))).probability, 0);
}

TEST(Pqa, EmptyPosteriorIsAnError) {
  DataGraph g({"a"});
  g.add_node(1, "x");
  Pudg p{Prior::explicit_support({{with_data(g, {{1, "y"}}), Rational(1)}}), edge_deletion_model(Rational(1, 2)), g, {}};
  try {
    global_pqa(p, gx::Query(N::data_eq("x")));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCandidate);
  }
}

TEST(Pqa, MatchesHandPosteriorRandom) {
  Rng rng(base_seed() + 50);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 80; ++t) {
    auto p = random_explicit_pudg(rng);
    gx::Query q = coin(rng) ? gx::Query(gen.node(3)) : gx::Query(gen.path(3));
    auto g = global_pqa(p, q), e = existential_pqa(p, q);
    EXPECT_EQ(g.probability, oracle_pqa(p, q, true)) << gx::to_string(q);
    EXPECT_EQ(e.probability, oracle_pqa(p, q, false)) << gx::to_string(q);
    EXPECT_GE(g.probability, 0);
    EXPECT_LE(g.probability, g.mass_accounted);
    EXPECT_EQ(g.mass_accounted, 1);
  }
}

TEST(Pqa, DualityRandom) {
  Rng rng(base_seed() + 51);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 80; ++t) {
    auto p = random_explicit_pudg(rng);
    auto nu = gen.node(3);
    EXPECT_EQ(global_pqa(p, gx::Query(nu)).probability + existential_pqa(p, gx::Query(N::negate(nu))).probability, 1);
    auto path = gen.path(3);
    EXPECT_EQ(global_pqa(p, gx::Query(path)).probability +
                  existential_pqa(p, gx::Query(P::complement(path))).probability,
              1);
  }
}

TEST(Pqa, AddingSatisfyingWorldNeverLowersGlobal) {
  Rng rng(base_seed() + 52);
  QueryGen gen(rng, QueryShape{});
  int checked = 0;
  for (int t = 0; t < 300 && checked < 40; ++t) {
    auto p = random_explicit_pudg(rng);
    auto nu = gx::Query(gen.node(2));
    // a new supergraph of the observation that satisfies nu
    std::optional<DataGraph> extra;
    for (int k = 0; k < 10 && !extra; ++k) {
      DataGraph h = p.observed;
      for (const auto& e : absent_edges(h))
        if (coin(rng, 0.5)) h.add_edge(e.from, e.label, e.to);
      bool fresh = true;
      for (const auto& [g, _] : p.prior.support()) fresh &= !(g == h);
      if (fresh && oracle::holds_global(h, nu)) extra = h;
    }
    if (!extra) continue;
    ++checked;
    auto support = p.prior.support();
    Rational add = random_positive_rational(rng);
    Rational tot = 1 + add;
    for (auto& [g, w] : support) w /= tot;
    support.emplace_back(*extra, add / tot);
    Pudg q = p;
    q.prior = Prior::explicit_support(support);
    EXPECT_GE(global_pqa(q, nu).probability, global_pqa(p, nu).probability);
  }
  EXPECT_GE(checked, 10);
}

TEST(Pqa, EmptyGraphIsVacuouslyGlobal) {
  DataGraph g({"a"});
  Pudg p{Prior::explicit_support({{g, Rational(1)}}), edge_deletion_model(Rational(1, 2)), g, {}};
  EXPECT_EQ(global_pqa(p, gx::Query(N::data_eq("x"))).probability, 1);
  EXPECT_EQ(existential_pqa(p, gx::Query(N::data_eq("x"))).probability, 0);
}
