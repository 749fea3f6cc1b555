#pragma once

#include "pudg/datagraph.hpp"
#include "pudg/rational.hpp"

#include <json.hpp>

namespace pudg {

nlohmann::json graph_to_json(const DataGraph& g, std::optional<NodeId> origin = std::nullopt);
GraphDocument graph_from_json(const nlohmann::json& j);
nlohmann::json edge_to_json(const Edge& e);
Edge edge_from_json(const nlohmann::json& j);
// Rational field: accepts "p/q" strings or JSON numbers (integers only).
Rational rational_from_json(const nlohmann::json& j);

}  // namespace pudg
