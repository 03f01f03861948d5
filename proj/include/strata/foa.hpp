#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/geometry.hpp"
#include "strata/graph.hpp"
#include "strata/reasoner.hpp"

namespace strata::foa {

/// One reasoning context: a seed rect and the rects attention reached from it.
struct Cover {
    std::string seed;
    std::vector<std::string> members; // in insertion order, seed first

    friend bool operator==(const Cover&, const Cover&) = default;
};

struct FoaParams {
    std::size_t max_cover_size = 30;
    std::size_t min_cover_size = 3;

    void validate() const;
};

/// Seeds are rects that contain another rect (an outgoing contains or an
/// incoming inside edge), taken in decreasing area with ids breaking ties.
/// Each uncovered seed grows a cover by repeatedly adding the largest rect
/// that shares any edge with a member, up to max_cover_size. Seed covers
/// below min_cover_size are dropped. Every rect left uncovered then gets a
/// fallback cover of itself plus its direct neighbours by decreasing area.
std::vector<Cover> build_covers(std::span<const geom::Rect> scene, const kg::LayeredGraph& g,
                                const FoaParams& params);

struct FoaResult {
    std::vector<Cover> covers;
    std::vector<reason::Belief> beliefs; // merged across covers
    std::map<std::string, reason::Label> labels;
};

struct ReasonOptions {
    reason::Budget budget;
    double theta = reason::kDefaultTheta;
    reason::ExpertAxioms axioms;
    unsigned threads = 0; // 0: hardware concurrency
};

/// Runs the reasoner on each cover's induced subgraph (in parallel), merges
/// the per-cover beliefs and classifies every rect.
FoaResult reason_with_foa(std::span<const geom::Rect> scene, const kg::LayeredGraph& g,
                          const FoaParams& params, const ReasonOptions& options);

/// Whole-graph reasoning with the same output shape (covers left empty).
FoaResult reason_whole(const kg::LayeredGraph& g, const ReasonOptions& options);

nlohmann::json covers_to_json(std::span<const Cover> covers);
std::vector<Cover> covers_from_json(const nlohmann::json& doc);

} // namespace strata::foa
