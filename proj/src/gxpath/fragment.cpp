#include "pudg/gxpath/fragment.hpp"

#include "pudg/errors.hpp"

#include <algorithm>

namespace pudg::gx {

namespace {

using PK = PathExpr::Kind;
using NK = NodeExpr::Kind;

struct Scan {
  bool negative = false, star = false, noncore_star = false, path_eq = false, path_neq = false;
  std::set<DataValue> values;

  void walk(const PathPtr& p) {
    switch (p->kind) {
      case PK::Complement: negative = true; break;
      case PK::Star:
        star = true;
        if (p->left->kind != PK::Label && p->left->kind != PK::InverseLabel) noncore_star = true;
        break;
      case PK::Test: walk(p->test); return;
      default: break;
    }
    if (p->left) walk(p->left);
    if (p->right) walk(p->right);
  }
  void walk(const NodePtr& n) {
    switch (n->kind) {
      case NK::Not: negative = true; break;
      case NK::DataEq:
      case NK::DataNeq: values.insert(n->value); break;
      case NK::PathEq: path_eq = true; break;
      case NK::PathNeq: path_neq = true; break;
      default: break;
    }
    if (n->left) walk(n->left);
    if (n->right) walk(n->right);
    if (n->path) walk(n->path);
    if (n->path2) walk(n->path2);
  }
};

Scan scan(const Query& q) {
  Scan s;
  std::visit([&](const auto& e) { s.walk(e); }, q);
  return s;
}

std::uint64_t cb(const NodePtr& n);

std::uint64_t cb(const PathPtr& p) {
  switch (p->kind) {
    case PK::Epsilon: return 1;
    case PK::Wildcard:
    case PK::Label:
    case PK::InverseLabel: return 2;
    case PK::Test: return cb(p->test);
    case PK::Concat:
    case PK::Intersect: return cb(p->left) + cb(p->right) - 1;
    case PK::Union: return std::max(cb(p->left), cb(p->right));
    case PK::Repeat: return std::max<std::uint64_t>(1, std::uint64_t{p->hi} * cb(p->left));
    case PK::Star: fail(ErrorKind::Precondition, "c_bound requires a star-free expression");
    case PK::Complement: fail(ErrorKind::Precondition, "c_bound requires a positive expression");
  }
  return 0;
}

std::uint64_t cb(const NodePtr& n) {
  switch (n->kind) {
    case NK::DataEq:
    case NK::DataNeq: return 1;
    case NK::Exists: return cb(n->path);
    case NK::And: return cb(n->left) + cb(n->right) - 1;
    case NK::Or: return std::max(cb(n->left), cb(n->right));
    case NK::PathEq:
    case NK::PathNeq: return cb(n->path) + cb(n->path2) - 1;
    case NK::Not: fail(ErrorKind::Precondition, "c_bound requires a positive expression");
  }
  return 0;
}

}  // namespace

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::PosCoreRegStarFree: return "PosCoreRegStarFree";
    case Fragment::PosCoreReg: return "PosCoreReg";
    case Fragment::PosReg: return "PosReg";
    case Fragment::Reg: return "Reg";
  }
  return "?";
}

Fragment fragment_of(const Query& q) {
  Scan s = scan(q);
  if (s.negative) return Fragment::Reg;
  if (s.noncore_star) return Fragment::PosReg;
  if (s.star) return Fragment::PosCoreReg;
  return Fragment::PosCoreRegStarFree;
}

std::set<DataValue> mentioned_data_values(const Query& q) { return scan(q).values; }
bool has_star(const Query& q) { return scan(q).star; }
bool has_path_equality(const Query& q) { return scan(q).path_eq; }
bool has_path_comparison(const Query& q) {
  Scan s = scan(q);
  return s.path_eq || s.path_neq;
}

std::uint64_t c_bound(const Query& q) {
  return std::visit([](const auto& e) { return cb(e); }, q);
}

}  // namespace pudg::gx
