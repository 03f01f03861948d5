#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strata/geometry.hpp"
#include "strata/graph.hpp"
#include "strata/image.hpp"
#include "strata/reasoner.hpp"

namespace strata::synth {

struct IntRange {
    int min = 0;
    int max = 0;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Shelf scene recipe. Shelf rows are grouped into bays (columns of
/// rows_per_bay flush-stacked rows); bays and the distractor band are kept
/// farther apart than the neighbour gap so each bay is one attention context.
struct SceneSpec {
    std::uint64_t seed = 0;
    int n_shelf_rows = 16;
    IntRange products_per_row{5, 7};
    IntRange product_w{14, 26};
    IntRange product_h{16, 30};
    double jitter_sigma = 1.0;
    double relation_noise = 0.0;
    int n_distractors = 29;
    int rows_per_bay = 3;
    double stack_prob = 0.12;
    int shelf_width = 0; // 0: sized from the product ranges

    void validate() const;
    friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

nlohmann::json to_json(const SceneSpec& spec);
SceneSpec spec_from_json(const nlohmann::json& doc, SceneSpec base = {});

/// Deterministic labelled scene. Throws infeasible_spec when a row cannot
/// hold its minimum product count.
geom::Scene generate_scene(const SceneSpec& spec, const geom::GeomParams& params = {});

/// 1-pixel white outlines on black; each rect covers pixels
/// [x, x+w-1] x [y, y+h-1]. Image size is the scene extent plus margin.
percept::GrayImage render_outline(const geom::Scene& scene, int margin = 8);

/// Drops or flips each L1 spatial edge with probability `rate`: half the hits
/// drop, the rest flip (aligned_h <-> aligned_v, other relations reverse
/// direction; a hit on is_floating always drops). Stamps travel with edges.
kg::LayeredGraph apply_relation_noise(const kg::LayeredGraph& g, double rate, std::uint64_t seed);

struct CategoryScores {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t support = 0;
};

/// All scores in percent.
struct MetricsReport {
    std::map<reason::Label, CategoryScores> per_category;
    double accuracy = 0;
    std::size_t total = 0;
};

/// One-vs-rest scores over the shared key set. Throws key_mismatch when the
/// maps cover different ids.
MetricsReport score(const std::map<std::string, reason::Label>& predicted,
                    const std::map<std::string, reason::Label>& truth);

/// Ground-truth labels of a scene (unlabelled rects count as other).
std::map<std::string, reason::Label> truth_labels(const geom::Scene& scene);

nlohmann::json to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const nlohmann::json& doc);

/// Aligned text table, one precision/recall/F-1 column group per entry,
/// rows product/shelf/other and an overall-accuracy footer.
std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& groups);

} // namespace strata::synth
