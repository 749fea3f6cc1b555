#include "pudg/gxpath/transforms.hpp"

#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"
#include "pudg/gxpath/fragment.hpp"

#include <functional>
#include <map>

namespace pudg::gx {

namespace {

using PK = PathExpr::Kind;
using NK = NodeExpr::Kind;

// Structural rebuild with optional hooks; returns the original pointer when nothing changed.
struct Rewriter {
  std::function<PathPtr(const PathPtr&)> wildcard;
  std::function<PathPtr(const PathPtr&)> star;               // called on Star nodes
  std::function<PathPtr(const PathPtr&)> guard_complement;   // wraps a rebuilt Complement

  PathPtr run(const PathPtr& p) {
    switch (p->kind) {
      case PK::Wildcard: return wildcard ? wildcard(p) : p;
      case PK::Epsilon:
      case PK::Label:
      case PK::InverseLabel: return p;
      case PK::Test: {
        auto t = run(p->test);
        return t == p->test ? p : path::test(t);
      }
      case PK::Concat:
      case PK::Union:
      case PK::Intersect: {
        auto a = run(p->left), b = run(p->right);
        if (a == p->left && b == p->right) return p;
        if (p->kind == PK::Concat) return path::concat(a, b);
        if (p->kind == PK::Union) return path::unite(a, b);
        return path::intersect(a, b);
      }
      case PK::Star: {
        if (star) return star(p);
        auto a = run(p->left);
        return a == p->left ? p : path::star(a);
      }
      case PK::Complement: {
        auto a = run(p->left);
        PathPtr c = a == p->left ? p : path::complement(a);
        return guard_complement ? guard_complement(c) : c;
      }
      case PK::Repeat: {
        auto a = run(p->left);
        return a == p->left ? p : path::repeat(a, p->lo, p->hi);
      }
    }
    return p;
  }

  NodePtr run(const NodePtr& n) {
    switch (n->kind) {
      case NK::DataEq:
      case NK::DataNeq: return n;
      case NK::Not: {
        auto a = run(n->left);
        return a == n->left ? n : node::negate(a);
      }
      case NK::And:
      case NK::Or: {
        auto a = run(n->left), b = run(n->right);
        if (a == n->left && b == n->right) return n;
        return n->kind == NK::And ? node::conj(a, b) : node::disj(a, b);
      }
      case NK::Exists: {
        auto a = run(n->path);
        return a == n->path ? n : node::exists(a);
      }
      case NK::PathEq:
      case NK::PathNeq: {
        auto a = run(n->path), b = run(n->path2);
        if (a == n->path && b == n->path2) return n;
        return n->kind == NK::PathEq ? node::path_eq(a, b) : node::path_neq(a, b);
      }
    }
    return n;
  }

  Query run(const Query& q) {
    return std::visit([&](const auto& e) -> Query { return run(e); }, q);
  }
};

PathPtr label_union(const std::set<Label>& labels) {
  if (labels.empty()) {
    // Never holds: no node has a value both equal and unequal to a constant.
    return path::test(node::conj(node::data_eq("x"), node::data_neq("x")));
  }
  PathPtr out;
  for (const auto& l : labels) out = out ? path::unite(out, path::label(l)) : path::label(l);
  return out;
}

Rewriter wildcard_rewriter(const std::set<Label>& labels) {
  Rewriter r;
  PathPtr u = label_union(labels);
  r.wildcard = [u](const PathPtr&) { return u; };
  return r;
}

NodeId next_id(const DataGraph& g) { return g.node_count() == 0 ? 0 : g.max_node_id() + 1; }

std::set<Label> with(std::set<Label> s, std::initializer_list<Label> extra) {
  s.insert(extra.begin(), extra.end());
  return s;
}

}  // namespace

Query rewrite_wildcards(const Query& q, const std::set<Label>& labels) {
  return wildcard_rewriter(labels).run(q);
}

StarFree eliminate_star(const DataGraph& g, const Query& q) {
  if (!has_star(q)) return {g, q};
  DataGraph out = g;
  std::map<Label, Label> star_label;
  Evaluator ev(g);
  const auto& ids = ev.index().ids;
  Rewriter r;
  r.star = [&](const PathPtr& p) -> PathPtr {
    const PathPtr& a = p->left;
    if (a->kind != PK::Label && a->kind != PK::InverseLabel)
      fail(ErrorKind::Precondition, "star over a non-atomic path cannot be eliminated: " + to_string(p));
    auto it = star_label.find(a->label);
    if (it == star_label.end()) {
      Label fresh = fresh_label(out.alphabet(), a->label + "*");
      out.add_label(fresh);
      BitRel closure = ev.index().label(a->label).closure();
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j)
          if (closure.get(i, j)) out.add_edge(ids[i], fresh, ids[j]);
      it = star_label.emplace(a->label, fresh).first;
    }
    return a->kind == PK::Label ? path::label(it->second) : path::inverse(it->second);
  };
  Query rewritten = r.run(q);
  // New labels must stay invisible to `_`.
  rewritten = rewrite_wildcards(rewritten, g.alphabet());
  return {std::move(out), rewritten};
}

OriginInstance to_origin(const DataGraph& g, const NodePtr& nu) {
  if (!within(fragment_of(nu), Fragment::PosReg))
    fail(ErrorKind::Precondition, "to_origin requires a positive expression");
  DataGraph out = g;
  Label next = fresh_label(g.alphabet(), "next");
  Label loop = fresh_label(with(g.alphabet(), {next}), "loop");
  out.add_label(next).add_label(loop);
  NodeId p0 = next_id(g);
  std::set<DataValue> used = g.data_values();
  for (const auto& v : mentioned_data_values(nu)) used.insert(v);
  out.add_node(p0, fresh_value(used));
  NodeId prev = p0;
  for (NodeId v : g.nodes()) {
    out.add_edge(prev, next, v);
    prev = v;
  }
  out.add_edge(prev, next, p0);
  out.add_edge(p0, loop, p0);
  NodePtr f = std::get<NodePtr>(rewrite_wildcards(nu, g.alphabet()));
  PathPtr step = path::concat(path::label(next), path::test(f));
  NodePtr q = node::exists(path::concat(path::star(step), path::concat(path::label(next), path::label(loop))));
  return {std::move(out), p0, q};
}

GlobalInstance to_global(const DataGraph& g, NodeId o, const NodePtr& nu) {
  if (!g.has_node(o)) fail(ErrorKind::Precondition, "origin is not a node");
  DataGraph out = g;
  Label loop = fresh_label(g.alphabet(), "loop");
  out.add_label(loop);
  for (NodeId v : g.nodes())
    if (v != o) out.add_edge(v, loop, v);
  NodePtr f = std::get<NodePtr>(rewrite_wildcards(nu, g.alphabet()));
  return {std::move(out), node::disj(node::exists(path::label(loop)), f)};
}

BipointedInstance path_to_bipointed(const DataGraph& g, const PathPtr& p) {
  DataGraph out = g;
  Label li = fresh_label(g.alphabet(), "i");
  Label lf = fresh_label(with(g.alphabet(), {li}), "f");
  Label orig = fresh_label(with(g.alphabet(), {li, lf}), "orig");
  out.add_label(li).add_label(lf).add_label(orig);
  NodeId u = next_id(g), v = u + 1;
  std::set<DataValue> used = g.data_values();
  for (const auto& d : mentioned_data_values(p)) used.insert(d);
  auto fresh = fresh_values(used, 2);
  out.add_node(u, fresh[0]).add_node(v, fresh[1]);
  for (NodeId x : g.nodes()) {
    out.add_edge(u, li, x);
    out.add_edge(x, lf, v);
    out.add_edge(x, orig, x);
  }
  Rewriter r = wildcard_rewriter(g.alphabet());
  // Inner complements must not reach u or v.
  r.guard_complement = [orig](const PathPtr& c) {
    return path::concat(path::label(orig), path::concat(c, path::label(orig)));
  };
  PathPtr body = r.run(p);
  PathPtr q = path::complement(path::concat(path::label(li), path::concat(path::complement(body), path::label(lf))));
  return {std::move(out), u, v, q};
}

GlobalPathInstance path_to_global(const DataGraph& g, NodeId u, NodeId v, const PathPtr& p) {
  if (!g.has_node(u) || !g.has_node(v)) fail(ErrorKind::Precondition, "pair endpoints must be nodes");
  DataGraph out = g;
  Label li = fresh_label(g.alphabet(), "i");
  Label lf = fresh_label(with(g.alphabet(), {li}), "f");
  out.add_label(li).add_label(lf);
  for (NodeId x : g.nodes()) {
    out.add_edge(x, li, u);
    out.add_edge(v, lf, x);
  }
  PathPtr body = std::get<PathPtr>(rewrite_wildcards(p, g.alphabet()));
  return {std::move(out), path::concat(path::label(li), path::concat(body, path::label(lf)))};
}

}  // namespace pudg::gx
