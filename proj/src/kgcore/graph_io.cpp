#include "strata/graph_io.hpp"

#include <cstdio>
#include <sstream>

#include "strata/error.hpp"

namespace strata::kg {

using nlohmann::json;

json to_json(const LayeredGraph& graph) {
    json doc;
    json nodes = json::array();
    for (const auto& [id, node] : graph.nodes()) {
        nodes.push_back({{"id", node.id},
                         {"layer", to_string(node.layer)},
                         {"kind", to_string(node.kind)},
                         {"payload", node.payload}});
    }
    json edges = json::array();
    for (const auto& [key, edge] : graph.edges()) {
        edges.push_back({{"relation", edge.relation},
                         {"from", edge.from},
                         {"to", edge.to},
                         {"f", edge.tv.frequency},
                         {"c", edge.tv.confidence},
                         {"stamp", edge.stamp.ids()}});
    }
    json relations = json::array();
    for (const auto& [name, type] : graph.registry().all()) {
        relations.push_back({{"name", type.name},
                             {"symmetry", to_string(type.symmetry)},
                             {"layer", to_string(type.layer)}});
    }
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    doc["relations"] = std::move(relations);
    return doc;
}

LayeredGraph graph_from_json(const json& doc) {
    try {
        LayeredGraph graph;
        for (const auto& rel : doc.at("relations")) {
            graph.registry().add({rel.at("name").get<std::string>(),
                                  parse_symmetry(rel.at("symmetry").get<std::string>()),
                                  parse_layer(rel.at("layer").get<std::string>())});
        }
        for (const auto& n : doc.at("nodes")) {
            Node node;
            node.id = n.at("id").get<std::string>();
            node.layer = parse_layer(n.at("layer").get<std::string>());
            node.kind = parse_node_kind(n.at("kind").get<std::string>());
            if (n.contains("payload"))
                node.payload = n.at("payload").get<std::map<std::string, double>>();
            graph.add_node(std::move(node));
        }
        for (const auto& e : doc.at("edges")) {
            Edge edge;
            edge.relation = e.at("relation").get<std::string>();
            edge.from = e.at("from").get<std::string>();
            edge.to = e.at("to").get<std::string>();
            edge.tv = {e.at("f").get<double>(), e.at("c").get<double>()};
            edge.stamp = Stamp(e.at("stamp").get<std::vector<std::uint64_t>>());
            graph.assert_edge(edge);
        }
        return graph;
    } catch (const json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("graph json: ") + err.what());
    }
}

namespace {

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string to_dot(const LayeredGraph& graph) {
    std::ostringstream out;
    out << "digraph strata {\n";
    for (const auto& [id, node] : graph.nodes()) {
        out << "  " << quoted(id) << " [layer=" << quoted(std::string(to_string(node.layer)))
            << ", kind=" << quoted(std::string(to_string(node.kind))) << "];\n";
    }
    char tv[32];
    for (const auto& [key, edge] : graph.edges()) {
        std::snprintf(tv, sizeof tv, "%.2f;%.2f", edge.tv.frequency, edge.tv.confidence);
        const RelationType* type = graph.registry().find(edge.relation);
        out << "  " << quoted(edge.from) << " -> " << quoted(edge.to)
            << " [label=" << quoted(edge.relation + " " + tv);
        if (type != nullptr && type->symmetry == Symmetry::symmetric)
            out << ", dir=none";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace strata::kg
