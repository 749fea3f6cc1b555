#pragma once

// Naive set-based GXPath semantics used as a reference for the bit-matrix evaluator.

#include "pudg/cnf.hpp"
#include "pudg/datagraph.hpp"
#include "pudg/gadgets.hpp"
#include "pudg/gxpath/ast.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>
#include <variant>

namespace pudg::oracle {

using Pairs = std::set<std::pair<NodeId, NodeId>>;
using Nodes = std::set<NodeId>;

Nodes node_set(const DataGraph& g, const gx::NodePtr& n);

inline Pairs identity(const DataGraph& g) {
  Pairs r;
  for (NodeId v : g.nodes()) r.insert({v, v});
  return r;
}

inline Pairs compose(const Pairs& a, const Pairs& b) {
  Pairs r;
  for (const auto& [x, y] : a)
    for (auto it = b.lower_bound({y, 0}); it != b.end() && it->first == y; ++it) r.insert({x, it->second});
  return r;
}

inline Pairs path_set(const DataGraph& g, const gx::PathPtr& p) {
  using K = gx::PathExpr::Kind;
  Pairs r;
  switch (p->kind) {
    case K::Epsilon: return identity(g);
    case K::Wildcard:
      for (const auto& e : g.edges()) r.insert({e.from, e.to});
      return r;
    case K::Label:
      for (const auto& e : g.edges())
        if (e.label == p->label) r.insert({e.from, e.to});
      return r;
    case K::InverseLabel:
      for (const auto& e : g.edges())
        if (e.label == p->label) r.insert({e.to, e.from});
      return r;
    case K::Test:
      for (NodeId v : node_set(g, p->test)) r.insert({v, v});
      return r;
    case K::Concat: return compose(path_set(g, p->left), path_set(g, p->right));
    case K::Union: {
      r = path_set(g, p->left);
      auto b = path_set(g, p->right);
      r.insert(b.begin(), b.end());
      return r;
    }
    case K::Intersect: {
      auto a = path_set(g, p->left), b = path_set(g, p->right);
      for (const auto& x : a)
        if (b.count(x)) r.insert(x);
      return r;
    }
    case K::Star: {
      auto step = path_set(g, p->left);
      r = identity(g);
      for (;;) {
        auto next = r;
        auto more = compose(r, step);
        next.insert(more.begin(), more.end());
        if (next == r) return r;
        r = std::move(next);
      }
    }
    case K::Complement: {
      auto a = path_set(g, p->left);
      for (NodeId v : g.nodes())
        for (NodeId w : g.nodes())
          if (!a.count({v, w})) r.insert({v, w});
      return r;
    }
    case K::Repeat: {
      auto step = path_set(g, p->left);
      Pairs power = identity(g);
      for (unsigned k = 0; k <= p->hi; ++k) {
        if (k >= p->lo) r.insert(power.begin(), power.end());
        power = compose(power, step);
      }
      return r;
    }
  }
  return r;
}

inline Nodes node_set(const DataGraph& g, const gx::NodePtr& n) {
  using K = gx::NodeExpr::Kind;
  Nodes r;
  switch (n->kind) {
    case K::Not: {
      auto a = node_set(g, n->left);
      for (NodeId v : g.nodes())
        if (!a.count(v)) r.insert(v);
      return r;
    }
    case K::And: {
      auto a = node_set(g, n->left), b = node_set(g, n->right);
      for (NodeId v : a)
        if (b.count(v)) r.insert(v);
      return r;
    }
    case K::Or: {
      r = node_set(g, n->left);
      auto b = node_set(g, n->right);
      r.insert(b.begin(), b.end());
      return r;
    }
    case K::Exists:
      for (const auto& pr : path_set(g, n->path)) r.insert(pr.first);
      return r;
    case K::DataEq:
      for (const auto& [v, d] : g.data())
        if (d == n->value) r.insert(v);
      return r;
    case K::DataNeq:
      for (const auto& [v, d] : g.data())
        if (d != n->value) r.insert(v);
      return r;
    case K::PathEq:
    case K::PathNeq: {
      bool want_eq = n->kind == K::PathEq;
      auto a = path_set(g, n->path), b = path_set(g, n->path2);
      for (const auto& [x, y] : a)
        for (auto it = b.lower_bound({x, 0}); it != b.end() && it->first == x; ++it)
          if ((g.data_of(y) == g.data_of(it->second)) == want_eq) r.insert(x);
      return r;
    }
  }
  return r;
}

inline bool holds_global(const DataGraph& g, const gx::Query& q) {
  if (auto p = std::get_if<gx::PathPtr>(&q)) {
    std::size_t n = g.node_count();
    return path_set(g, *p).size() == n * n;
  }
  return node_set(g, std::get<gx::NodePtr>(q)).size() == g.node_count();
}

inline bool holds_somewhere(const DataGraph& g, const gx::Query& q) {
  if (auto p = std::get_if<gx::PathPtr>(&q)) return !path_set(g, *p).empty();
  return !node_set(g, std::get<gx::NodePtr>(q)).empty();
}

// Assignment enumeration: bit i-1 of a is variable i.
inline std::uint64_t count_models_oracle(const Cnf& f) {
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int l : c) {
        bool v = (a >> (std::abs(l) - 1)) & 1u;
        any |= l > 0 ? v : !v;
      }
      all &= any;
    }
    n += all;
  }
  return n;
}

inline bool sat_oracle(const Cnf& f) { return count_models_oracle(f) > 0; }

inline bool hampath_oracle(const Digraph& g, std::size_t start) {
  std::vector<std::size_t> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::pair<std::size_t, std::size_t>> arcs(g.arcs.begin(), g.arcs.end());
  do {
    if (perm[0] != start) continue;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < g.n && ok; ++i) ok = arcs.count({perm[i], perm[i + 1]}) > 0;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace pudg::oracle
