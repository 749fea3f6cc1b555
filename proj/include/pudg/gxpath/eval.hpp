#pragma once

#include "pudg/datagraph.hpp"
#include "pudg/gxpath/ast.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pudg::gx {

// Dense n×n boolean relation, one bit row per node position.
class BitRel {
 public:
  BitRel() = default;
  explicit BitRel(std::size_t n) : n_(n), w_((n + 63) / 64), bits_(n * w_, 0) {}
  static BitRel identity(std::size_t n);
  static BitRel full(std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const { return (bits_[i * w_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { bits_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  bool row_any(std::size_t i) const;
  std::size_t count() const;
  bool all() const { return count() == n_ * n_; }
  bool none() const { return count() == 0; }

  BitRel compose(const BitRel& o) const;
  BitRel transpose() const;
  BitRel complement() const;
  BitRel closure() const;  // reflexive-transitive
  BitRel& operator|=(const BitRel& o);
  BitRel& operator&=(const BitRel& o);
  bool operator==(const BitRel& o) const = default;

 private:
  void or_row_into(std::size_t dst, const BitRel& src, std::size_t src_row);
  std::size_t n_ = 0, w_ = 0;
  std::vector<std::uint64_t> bits_;
};

using NodeBits = std::vector<char>;

// Positions, data classes and per-label relations of a graph.
struct GraphIndex {
  explicit GraphIndex(const DataGraph& g);
  std::vector<NodeId> ids;
  std::unordered_map<NodeId, std::size_t> pos;
  std::vector<int> data_class;
  std::map<DataValue, int> class_of;
  std::map<Label, BitRel> label_rel;
  BitRel any_edge;
  const BitRel& label(const Label& l) const;
};

// Bottom-up evaluator memoized per AST node for the lifetime of the object.
class Evaluator {
 public:
  explicit Evaluator(const DataGraph& g) : idx_(g) {}
  const BitRel& path(const PathPtr& p);
  const NodeBits& node(const NodePtr& n);
  const GraphIndex& index() const { return idx_; }

 private:
  GraphIndex idx_;
  std::unordered_map<const PathExpr*, BitRel> pmemo_;
  std::unordered_map<const NodeExpr*, NodeBits> nmemo_;
};

std::set<std::pair<NodeId, NodeId>> eval_path(const DataGraph& g, const PathPtr& p);
std::set<NodeId> eval_node(const DataGraph& g, const NodePtr& n);

bool satisfies_global(const DataGraph& g, const Query& q);
// Some node (pair) is in the denotation.
bool satisfies_somewhere(const DataGraph& g, const Query& q);
bool satisfies_at(const DataGraph& g, NodeId o, const NodePtr& n);
bool satisfies_pair(const DataGraph& g, NodeId u, NodeId v, const PathPtr& p);

}  // namespace pudg::gx
