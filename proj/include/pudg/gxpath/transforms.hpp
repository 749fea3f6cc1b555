#pragma once

#include "pudg/datagraph.hpp"
#include "pudg/gxpath/ast.hpp"

#include <set>

namespace pudg::gx {

// `_` replaced by the union of the given labels (an empty test when there are none).
Query rewrite_wildcards(const Query& q, const std::set<Label>& labels);

struct StarFree {
  DataGraph graph;
  Query query;
};
// Every Star(l) / Star(l^-) becomes l* / l*^- over a materialized closure label.
// Stars over anything else are rejected.
StarFree eliminate_star(const DataGraph& g, const Query& q);

struct OriginInstance {
  DataGraph graph;
  NodeId origin;
  NodePtr query;
};
// g satisfies nu globally  <=>  (graph, origin) satisfies query.  nu must be positive.
OriginInstance to_origin(const DataGraph& g, const NodePtr& nu);

struct GlobalInstance {
  DataGraph graph;
  NodePtr query;
};
// (g, o) satisfies nu  <=>  graph satisfies query globally.
GlobalInstance to_global(const DataGraph& g, NodeId o, const NodePtr& nu);

struct BipointedInstance {
  DataGraph graph;
  NodeId u, v;
  PathPtr query;
};
// g satisfies p on all pairs  <=>  (u, v) is in the query's denotation on graph.
BipointedInstance path_to_bipointed(const DataGraph& g, const PathPtr& p);

struct GlobalPathInstance {
  DataGraph graph;
  PathPtr query;
};
// (u, v) in p on g  <=>  graph satisfies query on all pairs.
GlobalPathInstance path_to_global(const DataGraph& g, NodeId u, NodeId v, const PathPtr& p);

}  // namespace pudg::gx
