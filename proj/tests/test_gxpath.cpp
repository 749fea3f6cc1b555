#include "oracle.hpp"
#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"
#include "pudg/gxpath/fragment.hpp"
#include "pudg/gxpath/parser.hpp"
#include "pudg/gxpath/partial_eval.hpp"
#include "pudg/gxpath/transforms.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace pudg;
using namespace pudg::testing;
namespace P = pudg::gx::path;
namespace N = pudg::gx::node;
using gx::Fragment;

namespace {

DataGraph two_x_edge() {
  DataGraph g({"a"});
  g.add_node(1, "x").add_node(2, "x").add_edge(1, "a", 2);
  return g;
}

// Fig.-1 style network: names as data, friend/follows edges.
DataGraph people() {
  DataGraph g({"friend", "follows"});
  g.add_node(1, "Alice").add_node(2, "Bob").add_node(3, "Carl").add_node(4, "Dave");
  g.add_edge(1, "friend", 2).add_edge(2, "friend", 1).add_edge(2, "follows", 1).add_edge(2, "follows", 3);
  return g;
}

}  // namespace

TEST(GxParse, RepeatOfUnion) {
  auto q = gx::parse_query("(friend + follows){0,3}");
  auto want = P::repeat(P::unite(P::label("friend"), P::label("follows")), 0, 3);
  ASSERT_TRUE(std::holds_alternative<gx::PathPtr>(q));
  EXPECT_TRUE(gx::equal(std::get<gx::PathPtr>(q), want));
}

TEST(GxParse, Basics) {
  EXPECT_TRUE(gx::equal(gx::parse_path("eps"), P::eps()));
  EXPECT_TRUE(gx::equal(gx::parse_path("_"), P::any()));
  EXPECT_TRUE(gx::equal(gx::parse_path("a^-"), P::inverse("a")));
  EXPECT_TRUE(gx::equal(gx::parse_path("a{2}"), P::repeat(P::label("a"), 2, 2)));
  auto q = gx::parse_query(R"(< "down_+"^- / assigned / [="T"] >)");
  auto want = N::exists(
      P::concat(P::concat(P::inverse("down_+"), P::label("assigned")), P::test(N::data_eq("T"))));
  ASSERT_TRUE(std::holds_alternative<gx::NodePtr>(q));
  EXPECT_TRUE(gx::equal(std::get<gx::NodePtr>(q), want));
}

TEST(GxParse, Precedence) {
  // postfix > ! > / > & > +
  auto p = gx::parse_path("a + b & c / !d*");
  auto want = P::unite(P::label("a"), P::intersect(P::label("b"), P::concat(P::label("c"), P::complement(P::star(P::label("d"))))));
  EXPECT_TRUE(gx::equal(p, want));
  auto n = gx::parse_node(R"(="x" | !="y" & !<a>)");
  auto wn = N::disj(N::data_eq("x"), N::conj(N::data_neq("y"), N::negate(N::exists(P::label("a")))));
  EXPECT_TRUE(gx::equal(n, wn));
}

TEST(GxParse, MalformedInputsRaiseParseError) {
  for (const char* bad : {"", "(a", "a +", "a{3,1}", "<a", "[=\"x\"", "a / / b", "=\"x", "="}) {
    try {
      gx::parse_query(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << bad;
    }
  }
  // identifier constants need no quotes
  EXPECT_TRUE(gx::equal(gx::parse_node("=x"), N::data_eq("x")));
}

TEST(GxParse, PrintParseRoundTripRandom) {
  Rng rng(base_seed() + 10);
  QueryShape s;
  s.negation = true;
  s.labels = {"a", "b c", "x+y"};
  s.values = {"x", "quote\"d", ""};
  s.values.pop_back();
  QueryGen gen(rng, s);
  for (int t = 0; t < 300; ++t) {
    gx::Query q = coin(rng) ? gx::Query(gen.path(4)) : gx::Query(gen.node(4));
    auto text = gx::to_string(q);
    auto back = gx::parse_query(text);
    EXPECT_TRUE(gx::equal(q, back)) << text;
  }
}

TEST(GxEval, EpsilonAndComplement) {
  auto g = two_x_edge();
  EXPECT_EQ(gx::eval_path(g, P::eps()), (oracle::Pairs{{1, 1}, {2, 2}}));
  EXPECT_EQ(gx::eval_path(g, P::complement(P::eps())), (oracle::Pairs{{1, 2}, {2, 1}}));
}

TEST(GxEval, StarClosure) {
  EXPECT_EQ(gx::eval_path(two_x_edge(), P::star(P::label("a"))), (oracle::Pairs{{1, 1}, {2, 2}, {1, 2}}));
}

TEST(GxEval, NodeExamples) {
  auto g = people();
  EXPECT_EQ(gx::eval_node(g, N::data_eq("Alice")), (oracle::Nodes{1}));
  EXPECT_EQ(gx::eval_node(two_x_edge(), N::path_eq(P::eps(), P::label("a"))), (oracle::Nodes{1}));
  EXPECT_EQ(gx::eval_node(g, gx::parse_node("<friend>")), (oracle::Nodes{1, 2}));
}

TEST(GxEval, NotDataEqMatchesDataNeq) {
  Rng rng(base_seed() + 11);
  for (int t = 0; t < 50; ++t) {
    auto g = random_graph(rng, uniform(rng, 0, 6), {"a"}, {"x", "y", "z"}, 0.3);
    EXPECT_EQ(gx::eval_node(g, N::negate(N::data_eq("x"))), gx::eval_node(g, N::data_neq("x")));
  }
}

TEST(GxEval, GlobalSatisfaction) {
  DataGraph empty({"a"});
  EXPECT_TRUE(gx::satisfies_global(empty, gx::Query(N::data_eq("x"))));
  EXPECT_TRUE(gx::satisfies_global(empty, gx::Query(P::label("a"))));
  DataGraph k({"a"});
  k.add_node(1, "x").add_node(2, "y");
  for (NodeId v : {1, 2})
    for (NodeId w : {1, 2}) k.add_edge(v, "a", w);
  EXPECT_TRUE(gx::satisfies_global(k, gx::Query(P::any())));

  auto alpha = gx::parse_query("(friend + follows){0,3}");
  auto g1 = people();
  auto g3 = g1;
  g3.add_edge(1, "friend", 4).add_edge(4, "friend", 3).add_edge(3, "follows", 2);
  EXPECT_FALSE(gx::satisfies_global(g1, alpha));
  EXPECT_TRUE(gx::satisfies_global(g3, alpha));
}

TEST(GxEval, PointSatisfaction) {
  Rng rng(base_seed() + 12);
  for (int t = 0; t < 30; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 5), {"a"}, {"x", "y"}, 0.3);
    for (NodeId v : g.nodes()) {
      EXPECT_TRUE(gx::satisfies_at(g, v, N::data_eq(g.data_of(v))));
      EXPECT_TRUE(gx::satisfies_pair(g, v, v, P::eps()));
    }
  }
}

// Every construct against the naive set semantics.
TEST(GxEval, AgreesWithSetOracleRandom) {
  Rng rng(base_seed() + 13);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 400; ++t) {
    auto g = random_graph(rng, uniform(rng, 0, 6), {"a", "b"}, {"x", "y", "z"}, 0.25);
    auto p = gen.path(4);
    EXPECT_EQ(gx::eval_path(g, p), oracle::path_set(g, p)) << gx::to_string(p);
    auto n = gen.node(4);
    EXPECT_EQ(gx::eval_node(g, n), oracle::node_set(g, n)) << gx::to_string(n);
    EXPECT_EQ(gx::satisfies_global(g, gx::Query(n)), oracle::holds_global(g, gx::Query(n)));
    EXPECT_EQ(gx::satisfies_somewhere(g, gx::Query(p)), oracle::holds_somewhere(g, gx::Query(p)));
  }
}

TEST(GxEval, DesugaringIdentities) {
  Rng rng(base_seed() + 14);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 200; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 5), {"a", "b"}, {"x", "y"}, 0.3);
    auto p = gen.path(3), q = gen.path(3);
    auto pp = gx::eval_path(g, p), qq = gx::eval_path(g, q);
    oracle::Pairs inter;
    for (const auto& x : pp)
      if (qq.count(x)) inter.insert(x);
    EXPECT_EQ(gx::eval_path(g, P::intersect(p, q)), inter);
    auto comp = gx::eval_path(g, P::complement(p));
    EXPECT_EQ(comp.size() + pp.size(), g.node_count() * g.node_count());
    for (const auto& x : comp) EXPECT_FALSE(pp.count(x));
    auto phi = gen.node(3);
    auto a = gx::eval_node(g, phi), na = gx::eval_node(g, N::negate(phi));
    EXPECT_EQ(a.size() + na.size(), g.node_count());
  }
}

TEST(GxEval, UnknownLabelIsAnError) {
  try {
    gx::eval_path(two_x_edge(), P::label("nope"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownLabel);
  }
}

TEST(GxPartial, SureAndMaybeBracketCompletions) {
  Rng rng(base_seed() + 15);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  std::vector<DataValue> vals = {"x", "y", "z"};
  for (int t = 0; t < 100; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 4), {"a", "b"}, vals, 0.3);
    auto n = gen.node(3);
    auto ids = g.nodes();
    std::vector<std::optional<DataValue>> data;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (coin(rng)) {
        data.push_back(std::nullopt);
        open.push_back(i);
      } else {
        data.push_back(g.data_of(ids[i]));
      }
    }
    gx::PartialEvaluator pe(g, data);
    const auto& tri = pe.node(n);
    // enumerate completions over vals
    std::vector<int> all(ids.size(), 1), any(ids.size(), 0);
    std::size_t combos = 1;
    for (std::size_t k = 0; k < open.size(); ++k) combos *= vals.size();
    for (std::size_t c = 0; c < combos; ++c) {
      std::map<NodeId, DataValue> upd;
      std::size_t r = c;
      for (std::size_t i : open) {
        upd[ids[i]] = vals[r % vals.size()];
        r /= vals.size();
      }
      auto h = with_data(g, upd);
      auto den = oracle::node_set(h, n);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        bool in = den.count(ids[i]) != 0;
        all[i] &= in;
        any[i] |= in;
      }
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (tri.sure[i]) {
        EXPECT_TRUE(all[i]) << gx::to_string(n);
      }
      if (!tri.maybe[i]) {
        EXPECT_FALSE(any[i]) << gx::to_string(n);
      }
    }
  }
}

TEST(GxFragment, Classification) {
  EXPECT_EQ(gx::fragment_of(gx::Query(P::complement(P::label("a")))), Fragment::Reg);
  EXPECT_EQ(gx::fragment_of(gx::Query(P::star(P::label("a")))), Fragment::PosCoreReg);
  EXPECT_EQ(gx::fragment_of(gx::Query(P::star(P::concat(P::label("a"), P::test(N::data_eq("c")))))), Fragment::PosReg);
  EXPECT_EQ(gx::fragment_of(gx::Query(P::label("a"))), Fragment::PosCoreRegStarFree);
  EXPECT_EQ(gx::fragment_of(gx::Query(N::negate(N::data_eq("c")))), Fragment::Reg);
  EXPECT_EQ(gx::fragment_of(gx::Query(N::path_neq(P::label("a"), P::eps()))), Fragment::PosCoreRegStarFree);
}

TEST(GxFragment, MentionedValues) {
  EXPECT_TRUE(gx::mentioned_data_values(gx::Query(P::label("a"))).empty());
  EXPECT_EQ(gx::mentioned_data_values(gx::Query(N::conj(N::data_eq("x"), N::data_neq("y")))),
            (std::set<DataValue>{"x", "y"}));
  Rng rng(base_seed() + 16);
  QueryGen gen(rng, QueryShape{});
  for (int t = 0; t < 100; ++t) {
    gx::Query q(gen.node(4));
    EXPECT_LE(gx::mentioned_data_values(q).size(), gx::size(q));
  }
}

TEST(GxFragment, CBoundRules) {
  EXPECT_EQ(gx::c_bound(gx::Query(P::eps())), 1u);
  EXPECT_EQ(gx::c_bound(gx::Query(P::label("a"))), 2u);
  EXPECT_EQ(gx::c_bound(gx::Query(P::concat(P::label("a"), P::label("b")))), 3u);
  EXPECT_EQ(gx::c_bound(gx::Query(P::repeat(P::label("a"), 1, 4))), 8u);
  EXPECT_EQ(gx::c_bound(gx::Query(P::unite(P::eps(), P::concat(P::label("a"), P::label("b"))))), 3u);
  EXPECT_THROW(gx::c_bound(gx::Query(P::star(P::label("a")))), Error);
}

TEST(GxTransform, StarFreeInputUnchanged) {
  auto g = people();
  gx::Query q(N::exists(P::concat(P::label("friend"), P::label("follows"))));
  auto sf = gx::eliminate_star(g, q);
  EXPECT_EQ(sf.graph, g);
  EXPECT_TRUE(gx::equal(sf.query, q));
}

TEST(GxTransform, StarEliminationOnPath) {
  DataGraph g({"a"});
  g.add_node(1, "x").add_node(2, "x").add_node(3, "x").add_edge(1, "a", 2).add_edge(2, "a", 3);
  auto sf = gx::eliminate_star(g, gx::Query(P::star(P::label("a"))));
  EXPECT_FALSE(gx::has_star(sf.query));
  for (const auto& e : g.edges()) EXPECT_TRUE(sf.graph.has_edge(e));
  std::set<Label> added;
  for (const auto& l : sf.graph.alphabet())
    if (!g.alphabet().count(l)) added.insert(l);
  ASSERT_EQ(added.size(), 1u);
  const Label& star = *added.begin();
  std::set<std::pair<NodeId, NodeId>> got;
  for (const auto& e : sf.graph.edges())
    if (e.label == star) got.insert({e.from, e.to});
  EXPECT_EQ(got, (oracle::Pairs{{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}, {1, 3}}));
}

TEST(GxTransform, StarEliminationPreservesDenotation) {
  Rng rng(base_seed() + 17);
  QueryShape s;
  s.core_star_only = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 100; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 8), {"a", "b"}, {"x", "y"}, 0.15);
    auto n = gen.node(4);
    auto sf = gx::eliminate_star(g, gx::Query(n));
    EXPECT_FALSE(gx::has_star(sf.query));
    EXPECT_EQ(oracle::node_set(g, n), oracle::node_set(sf.graph, std::get<gx::NodePtr>(sf.query))) << gx::to_string(n);
  }
}

TEST(GxTransform, StarOverNonAtomicRejected) {
  EXPECT_THROW(gx::eliminate_star(people(), gx::Query(P::star(P::concat(P::label("friend"), P::label("follows"))))),
               Error);
}

TEST(GxTransform, OriginOnEmptyGraph) {
  DataGraph empty({"a"});
  auto oi = gx::to_origin(empty, N::data_eq("x"));
  EXPECT_TRUE(oi.graph.has_node(oi.origin));
  EXPECT_TRUE(gx::satisfies_at(oi.graph, oi.origin, oi.query));
}

TEST(GxTransform, OriginTautology) {
  DataGraph g({"a"});
  g.add_node(1, "x").add_node(2, "y");
  auto oi = gx::to_origin(g, N::exists(P::eps()));
  EXPECT_TRUE(gx::satisfies_at(oi.graph, oi.origin, oi.query));
}

TEST(GxTransform, OriginAndGlobalPreserveSatisfaction) {
  Rng rng(base_seed() + 18);
  QueryGen gen(rng, QueryShape{});
  for (int t = 0; t < 150; ++t) {
    auto g = random_graph(rng, uniform(rng, 0, 6), {"a", "b"}, {"x", "y"}, 0.3);
    auto nu = gen.node(3);
    auto oi = gx::to_origin(g, nu);
    EXPECT_EQ(oracle::holds_global(g, gx::Query(nu)), oracle::node_set(oi.graph, oi.query).count(oi.origin) == 1)
        << gx::to_string(nu);
    if (g.node_count() == 0) continue;
    NodeId o = pick(rng, g.nodes());
    auto gi = gx::to_global(g, o, nu);
    EXPECT_EQ(oracle::node_set(g, nu).count(o) == 1, oracle::holds_global(gi.graph, gx::Query(gi.query)))
        << gx::to_string(nu);
  }
}

TEST(GxTransform, OriginRejectsNegation) {
  EXPECT_THROW(gx::to_origin(people(), N::negate(N::data_eq("x"))), Error);
}

TEST(GxTransform, PathTransformsPreserveSatisfaction) {
  Rng rng(base_seed() + 19);
  QueryShape s;
  s.negation = true;
  QueryGen gen(rng, s);
  for (int t = 0; t < 150; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 5), {"a", "b"}, {"x", "y"}, 0.35);
    auto p = gen.path(3);
    auto bi = gx::path_to_bipointed(g, p);
    EXPECT_EQ(oracle::holds_global(g, gx::Query(p)), oracle::path_set(bi.graph, bi.query).count({bi.u, bi.v}) == 1)
        << gx::to_string(p);
    NodeId u = pick(rng, g.nodes()), v = pick(rng, g.nodes());
    auto gl = gx::path_to_global(g, u, v, p);
    EXPECT_EQ(oracle::path_set(g, p).count({u, v}) == 1, oracle::holds_global(gl.graph, gx::Query(gl.query)))
        << gx::to_string(p);
  }
}

TEST(GxTransform, WildcardRewrite) {
  auto q = gx::rewrite_wildcards(gx::Query(P::any()), {"a", "b"});
  EXPECT_FALSE(gx::uses_wildcard(q));
  Rng rng(base_seed() + 20);
  for (int t = 0; t < 30; ++t) {
    auto g = random_graph(rng, uniform(rng, 1, 5), {"a", "b"}, {"x"}, 0.3);
    EXPECT_EQ(gx::eval_path(g, P::any()), gx::eval_path(g, std::get<gx::PathPtr>(q)));
  }
}
