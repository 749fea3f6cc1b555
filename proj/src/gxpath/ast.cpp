#include "pudg/gxpath/ast.hpp"

#include "pudg/errors.hpp"

#include <cctype>

namespace pudg::gx {

namespace {

using PK = PathExpr::Kind;
using NK = NodeExpr::Kind;

PathPtr mk(PathExpr e) { return std::make_shared<const PathExpr>(std::move(e)); }
NodePtr mk(NodeExpr e) { return std::make_shared<const NodeExpr>(std::move(e)); }

void require(const void* p) {
  if (!p) fail(ErrorKind::Precondition, "null subexpression");
}

PathPtr mkp(PK kind, PathPtr left = nullptr, PathPtr right = nullptr) {
  PathExpr e;
  e.kind = kind;
  e.left = std::move(left);
  e.right = std::move(right);
  return mk(std::move(e));
}

NodePtr mkn(NK kind, NodePtr left = nullptr, NodePtr right = nullptr) {
  NodeExpr e;
  e.kind = kind;
  e.left = std::move(left);
  e.right = std::move(right);
  return mk(std::move(e));
}

}  // namespace

namespace path {
PathPtr eps() { return mkp(PK::Epsilon); }
PathPtr any() { return mkp(PK::Wildcard); }
PathPtr label(const std::string& l) {
  PathExpr e;
  e.kind = PK::Label;
  e.label = l;
  return mk(std::move(e));
}
PathPtr inverse(const std::string& l) {
  PathExpr e;
  e.kind = PK::InverseLabel;
  e.label = l;
  return mk(std::move(e));
}
PathPtr test(NodePtr n) {
  require(n.get());
  PathExpr e;
  e.kind = PK::Test;
  e.test = std::move(n);
  return mk(std::move(e));
}
PathPtr concat(PathPtr a, PathPtr b) {
  require(a.get()), require(b.get());
  return mkp(PK::Concat, std::move(a), std::move(b));
}
PathPtr unite(PathPtr a, PathPtr b) {
  require(a.get()), require(b.get());
  return mkp(PK::Union, std::move(a), std::move(b));
}
PathPtr intersect(PathPtr a, PathPtr b) {
  require(a.get()), require(b.get());
  return mkp(PK::Intersect, std::move(a), std::move(b));
}
PathPtr star(PathPtr a) {
  require(a.get());
  return mkp(PK::Star, std::move(a));
}
PathPtr complement(PathPtr a) {
  require(a.get());
  return mkp(PK::Complement, std::move(a));
}
PathPtr repeat(PathPtr a, unsigned lo, unsigned hi) {
  require(a.get());
  if (lo > hi) fail(ErrorKind::Parse, "repetition bounds {" + std::to_string(lo) + "," + std::to_string(hi) + "} have n > m");
  PathExpr e;
  e.kind = PK::Repeat;
  e.left = std::move(a);
  e.lo = lo;
  e.hi = hi;
  return mk(std::move(e));
}
}  // namespace path

namespace node {
NodePtr negate(NodePtr a) {
  require(a.get());
  return mkn(NK::Not, std::move(a));
}
NodePtr conj(NodePtr a, NodePtr b) {
  require(a.get()), require(b.get());
  return mkn(NK::And, std::move(a), std::move(b));
}
NodePtr disj(NodePtr a, NodePtr b) {
  require(a.get()), require(b.get());
  return mkn(NK::Or, std::move(a), std::move(b));
}
NodePtr exists(PathPtr p) {
  require(p.get());
  NodeExpr e;
  e.kind = NK::Exists;
  e.path = std::move(p);
  return mk(std::move(e));
}
NodePtr data_eq(const DataValue& c) {
  NodeExpr e;
  e.kind = NK::DataEq;
  e.value = c;
  return mk(std::move(e));
}
NodePtr data_neq(const DataValue& c) {
  NodeExpr e;
  e.kind = NK::DataNeq;
  e.value = c;
  return mk(std::move(e));
}
namespace {
NodePtr compare(NK kind, PathPtr a, PathPtr b) {
  require(a.get()), require(b.get());
  NodeExpr e;
  e.kind = kind;
  e.path = std::move(a);
  e.path2 = std::move(b);
  return mk(std::move(e));
}
}  // namespace
NodePtr path_eq(PathPtr a, PathPtr b) { return compare(NK::PathEq, std::move(a), std::move(b)); }
NodePtr path_neq(PathPtr a, PathPtr b) { return compare(NK::PathNeq, std::move(a), std::move(b)); }
}  // namespace node

bool equal(const PathPtr& a, const PathPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case PK::Epsilon:
    case PK::Wildcard: return true;
    case PK::Label:
    case PK::InverseLabel: return a->label == b->label;
    case PK::Test: return equal(a->test, b->test);
    case PK::Concat:
    case PK::Union:
    case PK::Intersect: return equal(a->left, b->left) && equal(a->right, b->right);
    case PK::Star:
    case PK::Complement: return equal(a->left, b->left);
    case PK::Repeat: return a->lo == b->lo && a->hi == b->hi && equal(a->left, b->left);
  }
  return false;
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case NK::Not: return equal(a->left, b->left);
    case NK::And:
    case NK::Or: return equal(a->left, b->left) && equal(a->right, b->right);
    case NK::Exists: return equal(a->path, b->path);
    case NK::DataEq:
    case NK::DataNeq: return a->value == b->value;
    case NK::PathEq:
    case NK::PathNeq: return equal(a->path, b->path) && equal(a->path2, b->path2);
  }
  return false;
}

bool equal(const Query& a, const Query& b) {
  if (a.index() != b.index()) return false;
  if (auto p = std::get_if<PathPtr>(&a)) return equal(*p, std::get<PathPtr>(b));
  return equal(std::get<NodePtr>(a), std::get<NodePtr>(b));
}

std::size_t size(const PathPtr& p) {
  switch (p->kind) {
    case PK::Test: return 1 + size(p->test);
    case PK::Concat:
    case PK::Union:
    case PK::Intersect: return 1 + size(p->left) + size(p->right);
    case PK::Star:
    case PK::Complement:
    case PK::Repeat: return 1 + size(p->left);
    default: return 1;
  }
}

std::size_t size(const NodePtr& n) {
  switch (n->kind) {
    case NK::Not: return 1 + size(n->left);
    case NK::And:
    case NK::Or: return 1 + size(n->left) + size(n->right);
    case NK::Exists: return 1 + size(n->path);
    case NK::PathEq:
    case NK::PathNeq: return 1 + size(n->path) + size(n->path2);
    default: return 1;
  }
}

std::size_t size(const Query& q) {
  return std::visit([](const auto& e) { return size(e); }, q);
}

namespace {

bool plain_word(const std::string& s) {
  if (s.empty() || s == "eps" || s == "_") return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string label_text(const std::string& l) { return plain_word(l) ? l : quoted(l); }

}  // namespace

std::string to_string(const PathPtr& p) {
  switch (p->kind) {
    case PK::Epsilon: return "eps";
    case PK::Wildcard: return "_";
    case PK::Label: return label_text(p->label);
    case PK::InverseLabel: return label_text(p->label) + "^-";
    case PK::Test: return "[" + to_string(p->test) + "]";
    case PK::Concat: return "(" + to_string(p->left) + " / " + to_string(p->right) + ")";
    case PK::Union: return "(" + to_string(p->left) + " + " + to_string(p->right) + ")";
    case PK::Intersect: return "(" + to_string(p->left) + " & " + to_string(p->right) + ")";
    case PK::Star: return "(" + to_string(p->left) + ")*";
    case PK::Complement: return "!(" + to_string(p->left) + ")";
    case PK::Repeat:
      return "(" + to_string(p->left) + "){" + std::to_string(p->lo) + "," + std::to_string(p->hi) + "}";
  }
  return "?";
}

std::string to_string(const NodePtr& n) {
  switch (n->kind) {
    case NK::Not: return "!(" + to_string(n->left) + ")";
    case NK::And: return "(" + to_string(n->left) + " & " + to_string(n->right) + ")";
    case NK::Or: return "(" + to_string(n->left) + " | " + to_string(n->right) + ")";
    case NK::Exists: return "<" + to_string(n->path) + ">";
    case NK::DataEq: return "=" + quoted(n->value);
    case NK::DataNeq: return "!=" + quoted(n->value);
    case NK::PathEq: return "<" + to_string(n->path) + " = " + to_string(n->path2) + ">";
    case NK::PathNeq: return "<" + to_string(n->path) + " != " + to_string(n->path2) + ">";
  }
  return "?";
}

std::string to_string(const Query& q) {
  return std::visit([](const auto& e) { return to_string(e); }, q);
}

namespace {

struct LabelWalker {
  std::set<Label> labels;
  bool wildcard = false;
  void walk(const PathPtr& p) {
    switch (p->kind) {
      case PK::Wildcard: wildcard = true; break;
      case PK::Label:
      case PK::InverseLabel: labels.insert(p->label); break;
      case PK::Test: walk(p->test); break;
      default:
        if (p->left) walk(p->left);
        if (p->right) walk(p->right);
    }
  }
  void walk(const NodePtr& n) {
    if (n->left) walk(n->left);
    if (n->right) walk(n->right);
    if (n->path) walk(n->path);
    if (n->path2) walk(n->path2);
  }
};

}  // namespace

std::set<Label> labels_of(const Query& q) {
  LabelWalker w;
  std::visit([&](const auto& e) { w.walk(e); }, q);
  return w.labels;
}

bool uses_wildcard(const Query& q) {
  LabelWalker w;
  std::visit([&](const auto& e) { w.walk(e); }, q);
  return w.wildcard;
}

}  // namespace pudg::gx
