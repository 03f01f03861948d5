#include "strata/semantics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <regex>
#include <set>
#include <tuple>

#include "strata/error.hpp"
#include "strata/simd/kernels.hpp"

namespace strata::sem {

void register_spatial_relations(kg::RelationRegistry& registry) {
    for (std::string_view name : geom::binary_relations())
        registry.add({std::string(name), kg::Symmetry::antisymmetric, kg::Layer::L1});
    registry.add({std::string(kIsFloating), kg::Symmetry::antisymmetric, kg::Layer::L1});
}

bool valid_rect_id(std::string_view id) {
    if (id.empty() || id == kFloatingMarker)
        return false;
    return std::all_of(id.begin(), id.end(), [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
               ch == '_' || ch == '.' || ch == ':' || ch == '-';
    });
}

kg::LayeredGraph build_l1(std::span<const geom::Rect> scene, const geom::GeomParams& p) {
    p.validate();
    kg::LayeredGraph g;
    register_spatial_relations(g.registry());

    std::set<std::string_view> seen;
    for (const geom::Rect& r : scene) {
        if (!valid_rect_id(r.id))
            throw Error(ErrorCode::invalid_argument, "rect id '" + r.id + "' is not a valid identifier");
        if (!seen.insert(r.id).second)
            throw Error(ErrorCode::duplicate_rect_id, "rect id '" + r.id + "'");
        g.add_node({r.id, kg::Layer::L1, kg::NodeKind::percept, geom::attributes(r)});
    }
    g.add_node({std::string(kFloatingMarker), kg::Layer::L1, kg::NodeKind::attribute, {}});

    const std::size_t n = scene.size();
    std::vector<double> x0(n), y0(n), x1(n), y1(n);
    for (std::size_t i = 0; i < n; ++i) {
        x0[i] = scene[i].x;
        y0[i] = scene[i].y;
        x1[i] = scene[i].right();
        y1[i] = scene[i].bottom();
    }
    const simd::BoxArray boxes{x0, y0, x1, y1};
    std::vector<std::uint8_t> near(n), inner(n), outer(n);

    std::vector<geom::RelationInstance> instances;
    for (std::size_t i = 0; i < n; ++i) {
        simd::box_gate({x0[i], y0[i], x1[i], y1[i]}, boxes, p.neighbor_gap, p.containment_margin,
                       {near, inner, outer});
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !(near[j] || inner[j] || outer[j]))
                continue;
            auto found = geom::relations_between(scene[i], scene[j], p);
            instances.insert(instances.end(), std::make_move_iterator(found.begin()),
                             std::make_move_iterator(found.end()));
        }
        if (geom::floating(scene[i], scene, p))
            instances.push_back({std::string(kIsFloating), scene[i].id, std::string(kFloatingMarker)});
    }
    std::sort(instances.begin(), instances.end());

    std::uint64_t next_id = 1;
    for (const auto& inst : instances) {
        g.assert_edge({inst.relation, inst.from, inst.to,
                       {1.0, kg::kObservationConfidence}, kg::Stamp::single(next_id++)});
    }
    return g;
}

std::vector<geom::Rect> rects_from_graph(const kg::LayeredGraph& g) {
    std::vector<geom::Rect> out;
    for (const auto& [id, node] : g.nodes()) {
        if (node.kind != kg::NodeKind::percept)
            continue;
        auto get = [&](const char* key) {
            auto it = node.payload.find(key);
            if (it == node.payload.end())
                throw Error(ErrorCode::parse_error, "node '" + id + "' lacks attribute " + key);
            return it->second;
        };
        geom::Rect r;
        r.id = id;
        r.x = get("x");
        r.y = get("y");
        r.w = get("width");
        r.h = get("height");
        out.push_back(std::move(r));
    }
    return out;
}

std::uint64_t derived_id(std::string_view key) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : key) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    return hash | (1ull << 63);
}

namespace {

std::string format_value(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

bool is_attribute_name(std::string_view name) {
    auto names = geom::attribute_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

} // namespace

std::vector<Fact> collect_facts(const kg::LayeredGraph& g) {
    std::vector<Fact> facts;
    facts.reserve(g.edge_count() + 8 * g.nodes().size());
    for (const auto& [key, edge] : g.edges())
        facts.push_back({edge.relation, edge.from, edge.to, false, edge.tv, edge.stamp});
    for (const auto& [id, node] : g.nodes()) {
        if (node.kind != kg::NodeKind::percept)
            continue;
        for (std::string_view name : geom::attribute_names()) {
            auto it = node.payload.find(std::string(name));
            if (it == node.payload.end())
                continue;
            facts.push_back({std::string(name), id, format_value(it->second), true,
                             {1.0, kg::kObservationConfidence},
                             kg::Stamp::single(derived_id(id + "#" + std::string(name)))});
        }
    }
    std::sort(facts.begin(), facts.end(), [](const Fact& a, const Fact& b) {
        return std::tie(a.predicate, a.subject, a.object) <
               std::tie(b.predicate, b.subject, b.object);
    });
    return facts;
}

std::string format_premise(const Fact& fact) {
    char tv[48];
    std::snprintf(tv, sizeof tv, "%%%.2f;%.2f%%", fact.tv.frequency, fact.tv.confidence);
    return "<(*," + fact.subject + "," + fact.object + ") --> " + fact.predicate + ">. " + tv;
}

std::vector<PremiseLine> emit_premises(const kg::LayeredGraph& g) {
    std::vector<PremiseLine> lines;
    for (const Fact& fact : collect_facts(g))
        lines.push_back({format_premise(fact), fact.stamp.ids().front()});
    return lines;
}

std::string premises_text(std::span<const PremiseLine> lines) {
    std::string out;
    for (const auto& line : lines) {
        out += line.text;
        out += '\n';
    }
    return out;
}

std::optional<ParsedPremise> parse_premise(std::string_view line) {
    static const std::regex grammar(
        R"(^<\(\*,([A-Za-z0-9_.:\-]+),([A-Za-z0-9_.:+\-]+)\) --> ([A-Za-z_][A-Za-z0-9_]*)>\. %([0-9]+\.[0-9]+);([0-9]+\.[0-9]+)%$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(line.begin(), line.end(), m, grammar))
        return std::nullopt;
    ParsedPremise out;
    out.subject = m[1].str();
    out.object = m[2].str();
    out.predicate = m[3].str();
    out.frequency = std::stod(m[4].str());
    out.confidence = std::stod(m[5].str());
    out.is_attribute = is_attribute_name(out.predicate);
    return out;
}

} // namespace strata::sem
