#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strata/geometry.hpp"
#include "strata/graph.hpp"

namespace strata::sem {

inline constexpr std::string_view kFloatingMarker = "floating-marker";
inline constexpr std::string_view kIsFloating = "is_floating";

/// Registers the ten spatial relations plus is_floating, all antisymmetric on L1.
void register_spatial_relations(kg::RelationRegistry& registry);

/// Rect ids must be non-empty and drawn from [A-Za-z0-9_.:-] so they survive
/// the premise grammar.
bool valid_rect_id(std::string_view id);

/// L1 graph: one percept node per rect carrying its attributes, one edge per
/// directed relation instance, is_floating edges to the marker node. Edge
/// stamps are 1..E in sorted (relation, from, to) order.
kg::LayeredGraph build_l1(std::span<const geom::Rect> scene, const geom::GeomParams& p);

/// Rects recovered from the percept nodes' payloads (labels are not stored).
std::vector<geom::Rect> rects_from_graph(const kg::LayeredGraph& g);

/// One reasoner input fact: a relation edge or a node attribute.
struct Fact {
    std::string predicate;
    std::string subject;
    std::string object; // edge target, or the formatted attribute value
    bool is_attribute = false;
    kg::TruthValue tv;
    kg::Stamp stamp;
};

/// Stable id derived from a text key, in the upper half of the id space so it
/// never collides with edge stamps. Used for attribute facts and reified
/// negative observations, which must carry the same id in every subgraph.
std::uint64_t derived_id(std::string_view key);

/// Edges plus attribute facts, sorted by (predicate, subject, object).
std::vector<Fact> collect_facts(const kg::LayeredGraph& g);

struct PremiseLine {
    std::string text;
    std::uint64_t id = 0;
};

/// `<(*,FROM,TO) --> REL>. %F;C%`, one line per fact, same order as collect_facts.
std::vector<PremiseLine> emit_premises(const kg::LayeredGraph& g);
std::string format_premise(const Fact& fact);
/// Joined with LF, trailing newline included.
std::string premises_text(std::span<const PremiseLine> lines);

struct ParsedPremise {
    std::string predicate;
    std::string subject;
    std::string object;
    double frequency = 0;
    double confidence = 0;
    bool is_attribute = false;
};

/// Parses one premise line; nullopt when it does not match the grammar.
std::optional<ParsedPremise> parse_premise(std::string_view line);

} // namespace strata::sem
