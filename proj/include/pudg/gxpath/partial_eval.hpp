#pragma once

#include "pudg/gxpath/eval.hpp"

#include <optional>

namespace pudg::gx {

// Kleene-style evaluation with some data values unknown.
// `sure` holds for every completion of the unknown values, `maybe` for at least one.
struct Tri {
  BitRel sure, maybe;
};
struct TriNodes {
  NodeBits sure, maybe;
};

class PartialEvaluator {
 public:
  // data[i] is the value at node position i (GraphIndex order) or nullopt when open.
  PartialEvaluator(const DataGraph& g, const std::vector<std::optional<DataValue>>& data);

  const Tri& path(const PathPtr& p);
  const TriNodes& node(const NodePtr& n);
  std::size_t position(NodeId v) const { return idx_.pos.at(v); }

 private:
  GraphIndex idx_;
  std::vector<std::optional<DataValue>> data_;
  std::unordered_map<const PathExpr*, Tri> pmemo_;
  std::unordered_map<const NodeExpr*, TriNodes> nmemo_;
};

}  // namespace pudg::gx
