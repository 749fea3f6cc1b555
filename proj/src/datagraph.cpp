#include "pudg/datagraph.hpp"

#include "pudg/errors.hpp"
#include "pudg/json_io.hpp"

#include <algorithm>

namespace pudg {

DataGraph& DataGraph::add_node(NodeId id, DataValue data) {
  if (data.empty()) fail(ErrorKind::Format, "node " + std::to_string(id) + " has empty data value");
  if (!data_.emplace(id, std::move(data)).second)
    fail(ErrorKind::DuplicateNode, "duplicate node id " + std::to_string(id));
  return *this;
}

DataGraph& DataGraph::add_edge(NodeId from, const Label& label, NodeId to) {
  if (!alphabet_.count(label)) fail(ErrorKind::UnknownLabel, "edge label '" + label + "' not in alphabet");
  if (!has_node(from)) fail(ErrorKind::DanglingEndpoint, "edge source " + std::to_string(from) + " is not a node");
  if (!has_node(to)) fail(ErrorKind::DanglingEndpoint, "edge target " + std::to_string(to) + " is not a node");
  edges_.insert(Edge{from, label, to});
  return *this;
}

DataGraph& DataGraph::add_label(const Label& label) {
  if (label.empty()) fail(ErrorKind::Format, "empty edge label");
  alphabet_.insert(label);
  return *this;
}

DataGraph& DataGraph::set_data(NodeId id, DataValue data) {
  auto it = data_.find(id);
  if (it == data_.end()) fail(ErrorKind::DanglingEndpoint, "no node " + std::to_string(id));
  if (data.empty()) fail(ErrorKind::Format, "empty data value");
  it->second = std::move(data);
  return *this;
}

bool DataGraph::remove_edge(const Edge& e) { return edges_.erase(e) != 0; }

bool DataGraph::remove_node(NodeId id) {
  if (!data_.erase(id)) return false;
  std::erase_if(edges_, [id](const Edge& e) { return e.from == id || e.to == id; });
  return true;
}

std::vector<NodeId> DataGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(data_.size());
  for (const auto& [id, _] : data_) out.push_back(id);
  return out;
}

const DataValue& DataGraph::data_of(NodeId id) const {
  auto it = data_.find(id);
  if (it == data_.end()) fail(ErrorKind::DanglingEndpoint, "no node " + std::to_string(id));
  return it->second;
}

std::set<DataValue> DataGraph::data_values() const {
  std::set<DataValue> out;
  for (const auto& [_, d] : data_) out.insert(d);
  return out;
}

NodeId DataGraph::max_node_id() const { return data_.empty() ? 0 : data_.rbegin()->first; }

std::strong_ordering canonical_compare(const DataGraph& a, const DataGraph& b) {
  auto na = a.nodes(), nb = b.nodes();
  if (auto c = na <=> nb; c != 0) return c;
  if (auto c = a.edges() <=> b.edges(); c != 0) return c;
  if (auto c = a.data() <=> b.data(); c != 0) return c;
  return a.alphabet() <=> b.alphabet();
}

bool subgraph_leq(const DataGraph& g, const DataGraph& h) {
  if (g.alphabet() != h.alphabet()) fail(ErrorKind::Alphabet, "graphs have different edge alphabets");
  for (const auto& [id, d] : g.data()) {
    auto it = h.data().find(id);
    if (it == h.data().end() || it->second != d) return false;
  }
  return std::includes(h.edges().begin(), h.edges().end(), g.edges().begin(), g.edges().end());
}

bool equiv_up_to_data(const DataGraph& g, const DataGraph& h) {
  return g.nodes() == h.nodes() && g.edges() == h.edges();
}

std::uint64_t missing_edges(const DataGraph& g) {
  std::uint64_t n = g.node_count();
  return g.alphabet().size() * n * n - g.edge_count();
}

DataGraph induced_subgraph(const DataGraph& g, const std::set<NodeId>& keep) {
  DataGraph out(g.alphabet());
  for (NodeId v : keep) out.add_node(v, g.data_of(v));
  for (const auto& e : g.edges())
    if (keep.count(e.from) && keep.count(e.to)) out.add_edge(e.from, e.label, e.to);
  return out;
}

DataGraph with_data(const DataGraph& g, const std::map<NodeId, DataValue>& updates) {
  DataGraph out = g;
  for (const auto& [v, d] : updates) out.set_data(v, d);
  return out;
}

std::vector<Edge> absent_edges(const DataGraph& g) {
  std::vector<Edge> out;
  auto ns = g.nodes();
  for (NodeId v : ns)
    for (const auto& l : g.alphabet())
      for (NodeId w : ns) {
        Edge e{v, l, w};
        if (!g.has_edge(e)) out.push_back(std::move(e));
      }
  return out;
}

DataValue fresh_value(const std::set<DataValue>& avoid, std::size_t index) {
  return fresh_values(avoid, index + 1).back();
}

std::vector<DataValue> fresh_values(const std::set<DataValue>& avoid, std::size_t count) {
  std::vector<DataValue> out;
  for (std::size_t k = 0; out.size() < count; ++k) {
    DataValue v = "#fresh" + std::to_string(k);
    if (!avoid.count(v)) out.push_back(std::move(v));
  }
  return out;
}

Label fresh_label(const std::set<Label>& avoid, const std::string& base) {
  if (!avoid.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    Label l = base + "#" + std::to_string(k);
    if (!avoid.count(l)) return l;
  }
}

// ---- JSON ----

nlohmann::json edge_to_json(const Edge& e) {
  return nlohmann::json{{"from", e.from}, {"label", e.label}, {"to", e.to}};
}

namespace {

NodeId node_id_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(ErrorKind::Format, std::string(what) + " must be a natural number");
  return j.get<NodeId>();
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Format, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Edge edge_from_json(const nlohmann::json& j) {
  const auto& l = field(j, "label");
  if (!l.is_string()) fail(ErrorKind::Format, "edge label must be a string");
  return Edge{node_id_from_json(field(j, "from"), "edge 'from'"), l.get<std::string>(),
              node_id_from_json(field(j, "to"), "edge 'to'")};
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(ErrorKind::Format, "rational must be a \"num/den\" string or an integer");
}

nlohmann::json graph_to_json(const DataGraph& g, std::optional<NodeId> origin) {
  nlohmann::json j;
  j["edge_alphabet"] = nlohmann::json::array();
  for (const auto& l : g.alphabet()) j["edge_alphabet"].push_back(l);
  j["nodes"] = nlohmann::json::array();
  for (const auto& [id, d] : g.data()) j["nodes"].push_back({{"id", id}, {"data", d}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) j["edges"].push_back(edge_to_json(e));
  if (origin) j["origin"] = *origin;
  return j;
}

GraphDocument graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::Format, "graph must be a JSON object");
  std::set<Label> alphabet;
  const auto& ja = field(j, "edge_alphabet");
  if (!ja.is_array()) fail(ErrorKind::Format, "edge_alphabet must be an array");
  for (const auto& l : ja) {
    if (!l.is_string() || l.get<std::string>().empty()) fail(ErrorKind::Format, "labels must be non-empty strings");
    alphabet.insert(l.get<std::string>());
  }
  GraphDocument doc{DataGraph(std::move(alphabet)), std::nullopt};
  const auto& jn = field(j, "nodes");
  if (!jn.is_array()) fail(ErrorKind::Format, "nodes must be an array");
  for (const auto& n : jn) {
    const auto& d = field(n, "data");
    if (!d.is_string()) fail(ErrorKind::Format, "node data must be a string");
    doc.graph.add_node(node_id_from_json(field(n, "id"), "node id"), d.get<std::string>());
  }
  if (j.contains("edges")) {
    const auto& je = j.at("edges");
    if (!je.is_array()) fail(ErrorKind::Format, "edges must be an array");
    for (const auto& e : je) {
      Edge ed = edge_from_json(e);
      doc.graph.add_edge(ed.from, ed.label, ed.to);
    }
  }
  if (j.contains("origin")) {
    doc.origin = node_id_from_json(j.at("origin"), "origin");
    if (!doc.graph.has_node(*doc.origin)) fail(ErrorKind::DanglingEndpoint, "origin is not a node");
  }
  return doc;
}

GraphDocument parse_graph_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Format, std::string("malformed JSON: ") + e.what());
  }
  return graph_from_json(j);
}

DataGraph parse_graph(const std::string& text) { return parse_graph_document(text).graph; }

std::string serialize_graph(const DataGraph& g, std::optional<NodeId> origin) {
  return graph_to_json(g, origin).dump(2);
}

}  // namespace pudg
