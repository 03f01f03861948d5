#pragma once

#include <string>

#include <json.hpp>

#include "strata/graph.hpp"

namespace strata::kg {

nlohmann::json to_json(const LayeredGraph& graph);
LayeredGraph graph_from_json(const nlohmann::json& doc);

/// Graphviz export; edge labels read "relation f;c".
std::string to_dot(const LayeredGraph& graph);

} // namespace strata::kg
