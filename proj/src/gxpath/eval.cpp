#include "pudg/gxpath/eval.hpp"

#include "pudg/errors.hpp"

#include <bit>

namespace pudg::gx {

BitRel BitRel::identity(std::size_t n) {
  BitRel r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BitRel BitRel::full(std::size_t n) { return BitRel(n).complement(); }

bool BitRel::row_any(std::size_t i) const {
  for (std::size_t k = 0; k < w_; ++k)
    if (bits_[i * w_ + k]) return true;
  return false;
}

std::size_t BitRel::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

void BitRel::or_row_into(std::size_t dst, const BitRel& src, std::size_t src_row) {
  for (std::size_t k = 0; k < w_; ++k) bits_[dst * w_ + k] |= src.bits_[src_row * w_ + k];
}

BitRel BitRel::compose(const BitRel& o) const {
  BitRel r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (get(i, j)) r.or_row_into(i, o, j);
  return r;
}

BitRel BitRel::transpose() const {
  BitRel r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (get(i, j)) r.set(j, i);
  return r;
}

BitRel BitRel::complement() const {
  BitRel r(n_);
  for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] = ~bits_[k];
  if (n_ % 64) {
    std::uint64_t mask = (std::uint64_t{1} << (n_ % 64)) - 1;
    for (std::size_t i = 0; i < n_; ++i) r.bits_[i * w_ + w_ - 1] &= mask;
  }
  return r;
}

BitRel BitRel::closure() const {
  BitRel r = *this;
  r |= identity(n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      if (r.get(i, k)) r.or_row_into(i, r, k);
  return r;
}

BitRel& BitRel::operator|=(const BitRel& o) {
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
  return *this;
}

BitRel& BitRel::operator&=(const BitRel& o) {
  for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] &= o.bits_[k];
  return *this;
}

GraphIndex::GraphIndex(const DataGraph& g) : any_edge(g.node_count()) {
  ids = g.nodes();
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
  for (const auto& [id, d] : g.data()) {
    auto [it, _] = class_of.emplace(d, static_cast<int>(class_of.size()));
    data_class.push_back(it->second);
  }
  for (const auto& l : g.alphabet()) label_rel.emplace(l, BitRel(ids.size()));
  for (const auto& e : g.edges()) {
    std::size_t a = pos.at(e.from), b = pos.at(e.to);
    label_rel.at(e.label).set(a, b);
    any_edge.set(a, b);
  }
}

const BitRel& GraphIndex::label(const Label& l) const {
  auto it = label_rel.find(l);
  if (it == label_rel.end()) fail(ErrorKind::UnknownLabel, "label '" + l + "' not in the graph's alphabet");
  return it->second;
}

namespace {

using PK = PathExpr::Kind;
using NK = NodeExpr::Kind;

// Data-comparison witness test for <p = q> / <p != q>.
NodeBits compare_paths(const GraphIndex& idx, const BitRel& a, const BitRel& b, bool want_equal) {
  std::size_t n = idx.ids.size();
  NodeBits out(n, 0);
  std::vector<char> ca(idx.class_of.size()), cb(idx.class_of.size());
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(ca.begin(), ca.end(), 0);
    std::fill(cb.begin(), cb.end(), 0);
    std::size_t na = 0, nb = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (a.get(v, w) && !ca[idx.data_class[w]]) ca[idx.data_class[w]] = 1, ++na;
      if (b.get(v, w) && !cb[idx.data_class[w]]) cb[idx.data_class[w]] = 1, ++nb;
    }
    bool hit = false;
    if (want_equal) {
      for (std::size_t c = 0; c < ca.size() && !hit; ++c) hit = ca[c] && cb[c];
    } else if (na && nb) {
      // Some pair of reached values differs unless both sides reach one and the same value.
      hit = !(na == 1 && nb == 1 && ca == cb);
    }
    out[v] = hit;
  }
  return out;
}

}  // namespace

const BitRel& Evaluator::path(const PathPtr& p) {
  if (auto it = pmemo_.find(p.get()); it != pmemo_.end()) return it->second;
  std::size_t n = idx_.ids.size();
  BitRel r;
  switch (p->kind) {
    case PK::Epsilon: r = BitRel::identity(n); break;
    case PK::Wildcard: r = idx_.any_edge; break;
    case PK::Label: r = idx_.label(p->label); break;
    case PK::InverseLabel: r = idx_.label(p->label).transpose(); break;
    case PK::Test: {
      const NodeBits& t = node(p->test);
      r = BitRel(n);
      for (std::size_t i = 0; i < n; ++i)
        if (t[i]) r.set(i, i);
      break;
    }
    case PK::Concat: {
      BitRel a = path(p->left);
      r = a.compose(path(p->right));
      break;
    }
    case PK::Union:
      r = path(p->left);
      r |= path(p->right);
      break;
    case PK::Intersect:
      r = path(p->left);
      r &= path(p->right);
      break;
    case PK::Star: r = path(p->left).closure(); break;
    case PK::Complement: r = path(p->left).complement(); break;
    case PK::Repeat: {
      BitRel base = path(p->left);
      BitRel cur = BitRel::identity(n);
      r = p->lo == 0 ? cur : BitRel(n);
      for (unsigned k = 1; k <= p->hi; ++k) {
        cur = cur.compose(base);
        if (k >= p->lo) r |= cur;
      }
      break;
    }
  }
  return pmemo_.emplace(p.get(), std::move(r)).first->second;
}

const NodeBits& Evaluator::node(const NodePtr& e) {
  if (auto it = nmemo_.find(e.get()); it != nmemo_.end()) return it->second;
  std::size_t n = idx_.ids.size();
  NodeBits r(n, 0);
  switch (e->kind) {
    case NK::Not: {
      const NodeBits& a = node(e->left);
      for (std::size_t i = 0; i < n; ++i) r[i] = !a[i];
      break;
    }
    case NK::And:
    case NK::Or: {
      NodeBits a = node(e->left);
      const NodeBits& b = node(e->right);
      for (std::size_t i = 0; i < n; ++i) r[i] = e->kind == NK::And ? (a[i] && b[i]) : (a[i] || b[i]);
      break;
    }
    case NK::Exists: {
      const BitRel& a = path(e->path);
      for (std::size_t i = 0; i < n; ++i) r[i] = a.row_any(i);
      break;
    }
    case NK::DataEq:
    case NK::DataNeq: {
      auto it = idx_.class_of.find(e->value);
      int c = it == idx_.class_of.end() ? -1 : it->second;
      for (std::size_t i = 0; i < n; ++i) r[i] = (idx_.data_class[i] == c) == (e->kind == NK::DataEq);
      break;
    }
    case NK::PathEq:
    case NK::PathNeq: {
      BitRel a = path(e->path);
      const BitRel& b = path(e->path2);
      r = compare_paths(idx_, a, b, e->kind == NK::PathEq);
      break;
    }
  }
  return nmemo_.emplace(e.get(), std::move(r)).first->second;
}

std::set<std::pair<NodeId, NodeId>> eval_path(const DataGraph& g, const PathPtr& p) {
  Evaluator ev(g);
  const BitRel& r = ev.path(p);
  const auto& ids = ev.index().ids;
  std::set<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (r.get(i, j)) out.emplace(ids[i], ids[j]);
  return out;
}

std::set<NodeId> eval_node(const DataGraph& g, const NodePtr& e) {
  Evaluator ev(g);
  const NodeBits& r = ev.node(e);
  std::set<NodeId> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i]) out.insert(ev.index().ids[i]);
  return out;
}

bool satisfies_global(const DataGraph& g, const Query& q) {
  Evaluator ev(g);
  if (auto p = std::get_if<PathPtr>(&q)) return ev.path(*p).all();
  const NodeBits& r = ev.node(std::get<NodePtr>(q));
  for (char c : r)
    if (!c) return false;
  return true;
}

bool satisfies_somewhere(const DataGraph& g, const Query& q) {
  Evaluator ev(g);
  if (auto p = std::get_if<PathPtr>(&q)) return !ev.path(*p).none();
  for (char c : ev.node(std::get<NodePtr>(q)))
    if (c) return true;
  return false;
}

bool satisfies_at(const DataGraph& g, NodeId o, const NodePtr& e) {
  if (!g.has_node(o)) fail(ErrorKind::Precondition, "origin " + std::to_string(o) + " is not a node");
  Evaluator ev(g);
  return ev.node(e)[ev.index().pos.at(o)];
}

bool satisfies_pair(const DataGraph& g, NodeId u, NodeId v, const PathPtr& p) {
  if (!g.has_node(u) || !g.has_node(v)) fail(ErrorKind::Precondition, "pair endpoints must be nodes");
  Evaluator ev(g);
  return ev.path(p).get(ev.index().pos.at(u), ev.index().pos.at(v));
}

}  // namespace pudg::gx
