#include "strata/error.hpp"
#include "strata/geometry.hpp"
#include "strata/rng.hpp"
#include "strata/semantics.hpp"
#include "strata/synthlab.hpp"

namespace strata::synth {

kg::LayeredGraph apply_relation_noise(const kg::LayeredGraph& g, double rate, std::uint64_t seed) {
    if (!(rate >= 0 && rate <= 1))
        throw Error(ErrorCode::invalid_argument, "relation noise must lie in [0,1]");
    kg::LayeredGraph out;
    for (const auto& [name, type] : g.registry().all())
        out.registry().add(type);
    for (const auto& [id, node] : g.nodes())
        out.add_node(node);

    Rng rng(seed);
    for (const auto& [key, edge] : g.edges()) {
        const kg::RelationType* type = g.registry().find(edge.relation);
        const bool spatial = type && type->layer == kg::Layer::L1 && edge.relation != kg::kAbstracts;
        if (!spatial || rate == 0 || !rng.chance(rate)) {
            out.assert_edge(edge);
            continue;
        }
        const bool drop = rng.chance(0.5) || edge.relation == sem::kIsFloating;
        if (drop)
            continue;
        kg::Edge flipped = edge;
        if (edge.relation == geom::rel::aligned_h)
            flipped.relation = std::string(geom::rel::aligned_v);
        else if (edge.relation == geom::rel::aligned_v)
            flipped.relation = std::string(geom::rel::aligned_h);
        else
            std::swap(flipped.from, flipped.to);
        out.assert_edge(flipped);
    }
    return out;
}

} // namespace strata::synth
