#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/truth.hpp"

namespace strata::kg {

enum class Layer { L0 = 0, L1 = 1, L2 = 2, Lstar = 3 };
enum class Symmetry { symmetric, antisymmetric };
enum class NodeKind { percept, attribute, concept_node, goal };

std::string_view to_string(Layer layer);
std::string_view to_string(Symmetry symmetry);
std::string_view to_string(NodeKind kind);
Layer parse_layer(std::string_view text);
Symmetry parse_symmetry(std::string_view text);
NodeKind parse_node_kind(std::string_view text);

/// The single relation allowed to cross layers, always from layer n to n+1.
inline constexpr std::string_view kAbstracts = "abstracts";
inline constexpr std::string_view kDistinction = "distinction";
inline constexpr std::string_view kSimilarity = "similarity";

struct RelationType {
    std::string name;
    Symmetry symmetry = Symmetry::antisymmetric;
    Layer layer = Layer::L1;

    friend bool operator==(const RelationType&, const RelationType&) = default;
};

/// Append-only relation registry. Starts with the two innate relations.
class RelationRegistry {
public:
    RelationRegistry();

    /// Registers a relation, or confirms an identical existing one.
    /// Throws registry_conflict when the name exists with another symmetry.
    const RelationType& add(RelationType type);
    const RelationType* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    const std::map<std::string, RelationType, std::less<>>& all() const { return types_; }

private:
    std::map<std::string, RelationType, std::less<>> types_;
};

struct Node {
    std::string id;
    Layer layer = Layer::L1;
    NodeKind kind = NodeKind::percept;
    std::map<std::string, double> payload;

    friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
    std::string relation;
    std::string from;
    std::string to;
    TruthValue tv;
    Stamp stamp;

    Evidence evidence() const { return {tv, stamp}; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge identity. Symmetric relations use the ordered endpoint pair.
struct EdgeKey {
    std::string relation;
    std::string from;
    std::string to;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Outcome of an assert against an existing edge.
enum class AssertOutcome { inserted, revised, kept_existing, replaced };

class LayeredGraph {
public:
    LayeredGraph() = default;

    RelationRegistry& registry() { return registry_; }
    const RelationRegistry& registry() const { return registry_; }

    /// Adds a node. Throws duplicate_node for an existing id.
    void add_node(Node node);
    const Node* find_node(std::string_view id) const;
    bool has_node(std::string_view id) const { return find_node(id) != nullptr; }
    const std::map<std::string, Node, std::less<>>& nodes() const { return nodes_; }

    /// Inserts an edge or combines it with the existing edge of the same
    /// identity (revision, else keep the higher-confidence one). Never creates
    /// an inverse edge.
    AssertOutcome assert_edge(const Edge& edge);

    /// Returns the stored edge for (relation, from, to). Symmetric relations
    /// match either endpoint order.
    const Edge* query(std::string_view relation, std::string_view from,
                      std::string_view to) const;

    const std::map<EdgeKey, Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Full-graph check of endpoint existence, registry membership and the
    /// layer rule. Returns one message per violation.
    std::vector<std::string> audit() const;

    /// Induced subgraph on the given node ids (registry copied whole).
    LayeredGraph induced(const std::vector<std::string>& ids) const;

private:
    EdgeKey key_for(std::string_view relation, std::string_view from, std::string_view to,
                    Symmetry symmetry) const;
    void check_layers(const RelationType& type, const Node& from, const Node& to) const;

    RelationRegistry registry_;
    std::map<std::string, Node, std::less<>> nodes_;
    std::map<EdgeKey, Edge> edges_;
};

/// Node union by id plus edge union with revision/choice on duplicates.
/// Commutative and idempotent. Throws registry_conflict on symmetry mismatch.
LayeredGraph merge_graphs(const LayeredGraph& a, const LayeredGraph& b);

} // namespace strata::kg
