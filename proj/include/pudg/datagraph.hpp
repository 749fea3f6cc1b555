#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pudg {

using NodeId = std::uint64_t;
using DataValue = std::string;
using Label = std::string;

struct Edge {
  NodeId from;
  Label label;
  NodeId to;
  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

class DataGraph {
 public:
  DataGraph() = default;
  explicit DataGraph(std::set<Label> alphabet) : alphabet_(std::move(alphabet)) {}

  // Construction helpers; they validate the invariants eagerly.
  DataGraph& add_node(NodeId id, DataValue data);
  DataGraph& add_edge(NodeId from, const Label& label, NodeId to);
  DataGraph& add_label(const Label& label);
  DataGraph& set_data(NodeId id, DataValue data);
  bool remove_edge(const Edge& e);
  // Drops the node and every incident edge.
  bool remove_node(NodeId id);

  const std::set<Label>& alphabet() const { return alphabet_; }
  const std::map<NodeId, DataValue>& data() const { return data_; }
  const std::set<Edge>& edges() const { return edges_; }

  std::vector<NodeId> nodes() const;
  std::size_t node_count() const { return data_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_node(NodeId id) const { return data_.count(id) != 0; }
  bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }
  const DataValue& data_of(NodeId id) const;
  std::set<DataValue> data_values() const;
  NodeId max_node_id() const;  // 0 when empty

  bool operator==(const DataGraph& o) const = default;

 private:
  std::set<Label> alphabet_;
  std::map<NodeId, DataValue> data_;
  std::set<Edge> edges_;
};

// Node list, then edge set, then data map; alphabet last.
std::strong_ordering canonical_compare(const DataGraph& a, const DataGraph& b);
struct CanonicalLess {
  bool operator()(const DataGraph& a, const DataGraph& b) const { return canonical_compare(a, b) < 0; }
};

bool subgraph_leq(const DataGraph& g, const DataGraph& h);
bool equiv_up_to_data(const DataGraph& g, const DataGraph& h);
std::uint64_t missing_edges(const DataGraph& g);
// Sub-graph induced by the given node set.
DataGraph induced_subgraph(const DataGraph& g, const std::set<NodeId>& keep);
// Same nodes and edges, data replaced where the map says so.
DataGraph with_data(const DataGraph& g, const std::map<NodeId, DataValue>& updates);
// All edges (v, l, w) for the declared alphabet that are absent from g.
std::vector<Edge> absent_edges(const DataGraph& g);

DataValue fresh_value(const std::set<DataValue>& avoid, std::size_t index = 0);
// Values fresh_value(avoid, 0), fresh_value(avoid, 1), ... all distinct and outside avoid.
std::vector<DataValue> fresh_values(const std::set<DataValue>& avoid, std::size_t count);
Label fresh_label(const std::set<Label>& avoid, const std::string& base);

struct GraphDocument {
  DataGraph graph;
  std::optional<NodeId> origin;
};

DataGraph parse_graph(const std::string& text);
GraphDocument parse_graph_document(const std::string& text);
std::string serialize_graph(const DataGraph& g, std::optional<NodeId> origin = std::nullopt);

}  // namespace pudg
