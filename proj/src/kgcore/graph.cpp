#include "strata/graph.hpp"

#include <algorithm>
#include <set>

#include "strata/error.hpp"

namespace strata::kg {

std::string_view to_string(Layer layer) {
    switch (layer) {
    case Layer::L0: return "L0";
    case Layer::L1: return "L1";
    case Layer::L2: return "L2";
    case Layer::Lstar: return "Lstar";
    }
    return "?";
}

std::string_view to_string(Symmetry symmetry) {
    return symmetry == Symmetry::symmetric ? "symmetric" : "antisymmetric";
}

std::string_view to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::percept: return "percept";
    case NodeKind::attribute: return "attribute";
    case NodeKind::concept_node: return "concept";
    case NodeKind::goal: return "goal";
    }
    return "?";
}

Layer parse_layer(std::string_view text) {
    if (text == "L0") return Layer::L0;
    if (text == "L1") return Layer::L1;
    if (text == "L2") return Layer::L2;
    if (text == "Lstar" || text == "L*") return Layer::Lstar;
    throw Error(ErrorCode::parse_error, "unknown layer '" + std::string(text) + "'");
}

Symmetry parse_symmetry(std::string_view text) {
    if (text == "symmetric") return Symmetry::symmetric;
    if (text == "antisymmetric") return Symmetry::antisymmetric;
    throw Error(ErrorCode::parse_error, "unknown symmetry '" + std::string(text) + "'");
}

NodeKind parse_node_kind(std::string_view text) {
    if (text == "percept") return NodeKind::percept;
    if (text == "attribute") return NodeKind::attribute;
    if (text == "concept") return NodeKind::concept_node;
    if (text == "goal") return NodeKind::goal;
    throw Error(ErrorCode::parse_error, "unknown node kind '" + std::string(text) + "'");
}

RelationRegistry::RelationRegistry() {
    types_.emplace(std::string(kDistinction),
                   RelationType{std::string(kDistinction), Symmetry::antisymmetric, Layer::L1});
    types_.emplace(std::string(kSimilarity),
                   RelationType{std::string(kSimilarity), Symmetry::symmetric, Layer::L1});
}

const RelationType& RelationRegistry::add(RelationType type) {
    if (type.name == kAbstracts && type.symmetry != Symmetry::antisymmetric)
        throw Error(ErrorCode::registry_conflict, "'abstracts' is reserved as antisymmetric");
    auto it = types_.find(type.name);
    if (it != types_.end()) {
        if (it->second.symmetry != type.symmetry)
            throw Error(ErrorCode::registry_conflict,
                        "relation '" + type.name + "' already registered as " +
                            std::string(to_string(it->second.symmetry)));
        return it->second;
    }
    std::string name = type.name;
    return types_.emplace(std::move(name), std::move(type)).first->second;
}

const RelationType* RelationRegistry::find(std::string_view name) const {
    auto it = types_.find(name);
    return it == types_.end() ? nullptr : &it->second;
}

void LayeredGraph::add_node(Node node) {
    if (nodes_.contains(node.id))
        throw Error(ErrorCode::duplicate_node, "node '" + node.id + "' already exists");
    std::string id = node.id;
    nodes_.emplace(std::move(id), std::move(node));
}

const Node* LayeredGraph::find_node(std::string_view id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

EdgeKey LayeredGraph::key_for(std::string_view relation, std::string_view from,
                              std::string_view to, Symmetry symmetry) const {
    if (symmetry == Symmetry::symmetric && to < from)
        std::swap(from, to);
    return {std::string(relation), std::string(from), std::string(to)};
}

void LayeredGraph::check_layers(const RelationType& type, const Node& from,
                                const Node& to) const {
    if (type.name == kAbstracts) {
        const bool step = from.layer != Layer::Lstar && to.layer != Layer::Lstar &&
                          static_cast<int>(to.layer) == static_cast<int>(from.layer) + 1;
        if (!step)
            throw Error(ErrorCode::layer_violation,
                        "abstracts(" + from.id + "," + to.id + ") must go from layer n to n+1");
        return;
    }
    if (from.layer != to.layer)
        throw Error(ErrorCode::layer_violation,
                    type.name + "(" + from.id + "," + to.id + ") crosses " +
                        std::string(to_string(from.layer)) + " -> " +
                        std::string(to_string(to.layer)));
}

AssertOutcome LayeredGraph::assert_edge(const Edge& edge) {
    const RelationType* type = registry_.find(edge.relation);
    if (type == nullptr)
        throw Error(ErrorCode::unknown_relation, "relation '" + edge.relation + "'");
    const Node* from = find_node(edge.from);
    if (from == nullptr)
        throw Error(ErrorCode::unknown_node, "node '" + edge.from + "'");
    const Node* to = find_node(edge.to);
    if (to == nullptr)
        throw Error(ErrorCode::unknown_node, "node '" + edge.to + "'");
    check_layers(*type, *from, *to);
    if (!edge.tv.valid())
        throw Error(ErrorCode::invalid_argument, "invalid truth value on " + edge.relation);
    if (edge.stamp.empty())
        throw Error(ErrorCode::invalid_argument, "empty stamp on " + edge.relation);

    EdgeKey key = key_for(edge.relation, edge.from, edge.to, type->symmetry);
    auto it = edges_.find(key);
    if (it == edges_.end()) {
        Edge stored = edge;
        stored.from = key.from;
        stored.to = key.to;
        edges_.emplace(std::move(key), std::move(stored));
        return AssertOutcome::inserted;
    }
    Edge& existing = it->second;
    if (auto pooled = revise(existing.evidence(), edge.evidence())) {
        existing.tv = pooled->tv;
        existing.stamp = pooled->stamp;
        return AssertOutcome::revised;
    }
    if (more_confident(edge.evidence(), existing.evidence())) {
        existing.tv = edge.tv;
        existing.stamp = edge.stamp;
        return AssertOutcome::replaced;
    }
    return AssertOutcome::kept_existing;
}

const Edge* LayeredGraph::query(std::string_view relation, std::string_view from,
                                std::string_view to) const {
    const RelationType* type = registry_.find(relation);
    if (type == nullptr)
        return nullptr;
    auto it = edges_.find(key_for(relation, from, to, type->symmetry));
    return it == edges_.end() ? nullptr : &it->second;
}

std::vector<std::string> LayeredGraph::audit() const {
    std::vector<std::string> problems;
    for (const auto& [key, edge] : edges_) {
        const std::string label = edge.relation + "(" + edge.from + "," + edge.to + ")";
        const RelationType* type = registry_.find(edge.relation);
        if (type == nullptr) {
            problems.push_back(label + ": unregistered relation");
            continue;
        }
        const Node* from = find_node(edge.from);
        const Node* to = find_node(edge.to);
        if (from == nullptr || to == nullptr) {
            problems.push_back(label + ": dangling endpoint");
            continue;
        }
        try {
            check_layers(*type, *from, *to);
        } catch (const Error& err) {
            problems.push_back(label + ": " + err.what());
        }
        if (type->symmetry == Symmetry::symmetric && edge.to < edge.from)
            problems.push_back(label + ": symmetric edge not stored canonically");
        if (!edge.tv.valid() || edge.stamp.empty())
            problems.push_back(label + ": invalid truth value or stamp");
    }
    return problems;
}

LayeredGraph LayeredGraph::induced(const std::vector<std::string>& ids) const {
    LayeredGraph out;
    out.registry_ = registry_;
    std::set<std::string, std::less<>> keep;
    for (const auto& id : ids) {
        if (const Node* node = find_node(id)) {
            if (keep.insert(id).second)
                out.nodes_.emplace(id, *node);
        }
    }
    for (const auto& [key, edge] : edges_) {
        if (keep.contains(edge.from) && keep.contains(edge.to))
            out.edges_.emplace(key, edge);
    }
    return out;
}

namespace {

Node merge_node(const Node& a, const Node& b) {
    if (a.layer != b.layer || a.kind != b.kind)
        throw Error(ErrorCode::duplicate_node,
                    "node '" + a.id + "' has conflicting layer or kind across graphs");
    Node out = a;
    for (const auto& [name, value] : b.payload) {
        auto [it, inserted] = out.payload.emplace(name, value);
        if (!inserted)
            it->second = std::min(it->second, value);
    }
    return out;
}

} // namespace

LayeredGraph merge_graphs(const LayeredGraph& a, const LayeredGraph& b) {
    LayeredGraph out;
    for (const auto* source : {&a, &b}) {
        for (const auto& [name, type] : source->registry().all()) {
            const RelationType* existing = out.registry().find(name);
            if (existing != nullptr && existing->layer != type.layer)
                throw Error(ErrorCode::registry_conflict,
                            "relation '" + name + "' registered on different layers");
            out.registry().add(type);
        }
    }
    for (const auto& [id, node] : a.nodes()) {
        if (const Node* other = b.find_node(id))
            out.add_node(merge_node(node, *other));
        else
            out.add_node(node);
    }
    for (const auto& [id, node] : b.nodes()) {
        if (!out.has_node(id))
            out.add_node(node);
    }
    for (const auto& [key, edge] : a.edges())
        out.assert_edge(edge);
    for (const auto& [key, edge] : b.edges())
        out.assert_edge(edge);
    return out;
}

} // namespace strata::kg
