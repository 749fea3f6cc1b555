#pragma once

#include "pudg/datagraph.hpp"

#include <memory>
#include <set>
#include <string>
#include <variant>

namespace pudg::gx {

struct PathExpr;
struct NodeExpr;
using PathPtr = std::shared_ptr<const PathExpr>;
using NodePtr = std::shared_ptr<const NodeExpr>;

struct PathExpr {
  enum class Kind { Epsilon, Wildcard, Label, InverseLabel, Test, Concat, Union, Intersect, Star, Complement, Repeat };
  Kind kind;
  std::string label;  // Label / InverseLabel
  NodePtr test;       // Test
  PathPtr left;       // unary operand or left side
  PathPtr right;
  unsigned lo = 0, hi = 0;  // Repeat
};

struct NodeExpr {
  enum class Kind { Not, And, Or, Exists, DataEq, DataNeq, PathEq, PathNeq };
  Kind kind;
  NodePtr left, right;  // Not uses left
  PathPtr path, path2;  // Exists uses path
  DataValue value;      // DataEq / DataNeq
};

using Query = std::variant<PathPtr, NodePtr>;

namespace path {
PathPtr eps();
PathPtr any();
PathPtr label(const std::string& l);
PathPtr inverse(const std::string& l);
PathPtr test(NodePtr n);
PathPtr concat(PathPtr a, PathPtr b);
PathPtr unite(PathPtr a, PathPtr b);
PathPtr intersect(PathPtr a, PathPtr b);
PathPtr star(PathPtr a);
PathPtr complement(PathPtr a);
PathPtr repeat(PathPtr a, unsigned lo, unsigned hi);
}  // namespace path

namespace node {
NodePtr negate(NodePtr a);
NodePtr conj(NodePtr a, NodePtr b);
NodePtr disj(NodePtr a, NodePtr b);
NodePtr exists(PathPtr p);
NodePtr data_eq(const DataValue& c);
NodePtr data_neq(const DataValue& c);
NodePtr path_eq(PathPtr a, PathPtr b);
NodePtr path_neq(PathPtr a, PathPtr b);
}  // namespace node

bool equal(const PathPtr& a, const PathPtr& b);
bool equal(const NodePtr& a, const NodePtr& b);
bool equal(const Query& a, const Query& b);

// Number of AST nodes.
std::size_t size(const PathPtr& p);
std::size_t size(const NodePtr& n);
std::size_t size(const Query& q);

// Fully parenthesized concrete syntax; parse(print(e)) is structurally equal to e.
std::string to_string(const PathPtr& p);
std::string to_string(const NodePtr& n);
std::string to_string(const Query& q);

// Labels used (plain or inverse).
std::set<Label> labels_of(const Query& q);
bool uses_wildcard(const Query& q);

}  // namespace pudg::gx
