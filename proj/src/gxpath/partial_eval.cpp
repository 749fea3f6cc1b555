#include "pudg/gxpath/partial_eval.hpp"

#include "pudg/errors.hpp"

namespace pudg::gx {

namespace {
using PK = PathExpr::Kind;
using NK = NodeExpr::Kind;
}  // namespace

PartialEvaluator::PartialEvaluator(const DataGraph& g, const std::vector<std::optional<DataValue>>& data)
    : idx_(g), data_(data) {
  if (data_.size() != idx_.ids.size()) fail(ErrorKind::Precondition, "partial data vector has wrong length");
}

const Tri& PartialEvaluator::path(const PathPtr& p) {
  if (auto it = pmemo_.find(p.get()); it != pmemo_.end()) return it->second;
  std::size_t n = idx_.ids.size();
  Tri r;
  switch (p->kind) {
    case PK::Epsilon: r.sure = r.maybe = BitRel::identity(n); break;
    case PK::Wildcard: r.sure = r.maybe = idx_.any_edge; break;
    case PK::Label: r.sure = r.maybe = idx_.label(p->label); break;
    case PK::InverseLabel: r.sure = r.maybe = idx_.label(p->label).transpose(); break;
    case PK::Test: {
      const TriNodes& t = node(p->test);
      r.sure = BitRel(n), r.maybe = BitRel(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (t.sure[i]) r.sure.set(i, i);
        if (t.maybe[i]) r.maybe.set(i, i);
      }
      break;
    }
    case PK::Concat: {
      Tri a = path(p->left);
      const Tri& b = path(p->right);
      r.sure = a.sure.compose(b.sure);
      r.maybe = a.maybe.compose(b.maybe);
      break;
    }
    case PK::Union:
    case PK::Intersect: {
      r = path(p->left);
      const Tri& b = path(p->right);
      if (p->kind == PK::Union) {
        r.sure |= b.sure, r.maybe |= b.maybe;
      } else {
        r.sure &= b.sure, r.maybe &= b.maybe;
      }
      break;
    }
    case PK::Star: {
      const Tri& a = path(p->left);
      r.sure = a.sure.closure();
      r.maybe = a.maybe.closure();
      break;
    }
    case PK::Complement: {
      const Tri& a = path(p->left);
      r.sure = a.maybe.complement();
      r.maybe = a.sure.complement();
      break;
    }
    case PK::Repeat: {
      Tri base = path(p->left);
      BitRel cs = BitRel::identity(n), cm = cs;
      r.sure = p->lo == 0 ? cs : BitRel(n);
      r.maybe = r.sure;
      for (unsigned k = 1; k <= p->hi; ++k) {
        cs = cs.compose(base.sure);
        cm = cm.compose(base.maybe);
        if (k >= p->lo) r.sure |= cs, r.maybe |= cm;
      }
      break;
    }
  }
  return pmemo_.emplace(p.get(), std::move(r)).first->second;
}

const TriNodes& PartialEvaluator::node(const NodePtr& e) {
  if (auto it = nmemo_.find(e.get()); it != nmemo_.end()) return it->second;
  std::size_t n = idx_.ids.size();
  TriNodes r{NodeBits(n, 0), NodeBits(n, 0)};
  switch (e->kind) {
    case NK::Not: {
      const TriNodes& a = node(e->left);
      for (std::size_t i = 0; i < n; ++i) r.sure[i] = !a.maybe[i], r.maybe[i] = !a.sure[i];
      break;
    }
    case NK::And:
    case NK::Or: {
      TriNodes a = node(e->left);
      const TriNodes& b = node(e->right);
      bool conj = e->kind == NK::And;
      for (std::size_t i = 0; i < n; ++i) {
        r.sure[i] = conj ? (a.sure[i] && b.sure[i]) : (a.sure[i] || b.sure[i]);
        r.maybe[i] = conj ? (a.maybe[i] && b.maybe[i]) : (a.maybe[i] || b.maybe[i]);
      }
      break;
    }
    case NK::Exists: {
      const Tri& a = path(e->path);
      for (std::size_t i = 0; i < n; ++i) r.sure[i] = a.sure.row_any(i), r.maybe[i] = a.maybe.row_any(i);
      break;
    }
    case NK::DataEq:
    case NK::DataNeq: {
      bool eq = e->kind == NK::DataEq;
      for (std::size_t i = 0; i < n; ++i) {
        if (data_[i]) {
          r.sure[i] = r.maybe[i] = ((*data_[i] == e->value) == eq);
        } else {
          r.maybe[i] = 1;
        }
      }
      break;
    }
    case NK::PathEq:
    case NK::PathNeq: {
      Tri a = path(e->path);
      const Tri& b = path(e->path2);
      bool eq = e->kind == NK::PathEq;
      for (std::size_t v = 0; v < n; ++v) {
        bool sure = false, maybe = false;
        for (std::size_t w1 = 0; w1 < n && !(sure && maybe); ++w1) {
          if (!a.maybe.get(v, w1)) continue;
          for (std::size_t w2 = 0; w2 < n; ++w2) {
            if (!b.maybe.get(v, w2)) continue;
            bool known = data_[w1] && data_[w2];
            bool same = w1 == w2 || (known && *data_[w1] == *data_[w2]);
            bool differ = w1 != w2 && known && *data_[w1] != *data_[w2];
            bool can = eq ? (same || !known) : (w1 != w2 && (differ || !known));
            bool must = eq ? same : differ;
            if (can) maybe = true;
            if (must && a.sure.get(v, w1) && b.sure.get(v, w2)) sure = true;
          }
        }
        r.sure[v] = sure;
        r.maybe[v] = maybe || sure;
      }
      break;
    }
  }
  return nmemo_.emplace(e.get(), std::move(r)).first->second;
}

}  // namespace pudg::gx
