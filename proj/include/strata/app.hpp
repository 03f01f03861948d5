#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "strata/foa.hpp"
#include "strata/geometry.hpp"
#include "strata/percept.hpp"
#include "strata/reasoner.hpp"
#include "strata/synthlab.hpp"

namespace strata::app {

/// One reproducible run. Exactly one scene source is used, in priority
/// image_file > scene_file > generated scene.
struct RunConfig {
    std::uint64_t seed = 0;
    std::optional<synth::SceneSpec> scene; // generated when no file is given
    bool scene_seed_explicit = false;
    std::string scene_file;
    std::string image_file;
    std::optional<geom::GeomParams> geom; // overrides scene-file params
    reason::Budget budget;
    foa::FoaParams foa;
    percept::HoughParams hough;
    bool use_foa = true;
    double theta = reason::kDefaultTheta;
    reason::ExpertAxioms axioms;
};

/// Parses a config document; unknown keys are rejected. Relative file paths
/// resolve against base_dir. expert_axioms is a path or an inline object.
RunConfig config_from_json(const nlohmann::json& doc, const std::string& base_dir = "");
RunConfig load_config(const std::string& path);

reason::Budget budget_from_json(const nlohmann::json& doc, reason::Budget base = {});
nlohmann::json to_json(const reason::Budget& b);
foa::FoaParams foa_params_from_json(const nlohmann::json& doc, foa::FoaParams base = {});

std::string read_file(const std::string& path);
nlohmann::json read_json(const std::string& path);
void write_file(const std::string& path, const std::string& data);
/// Pretty-printed with a trailing newline.
void write_json(const std::string& path, const nlohmann::json& doc);

/// Labels file or labelled scene file (anything with a "rects" array).
std::map<std::string, reason::Label> load_truth(const std::string& path);

struct PipelineSummary {
    std::size_t rects = 0;
    std::size_t edges = 0;
    std::size_t premises = 0;
    std::size_t covers = 0;
    std::optional<synth::MetricsReport> metrics;
};

/// Runs every stage and writes scene.json, scene.pgm, graph.json,
/// premises.nal, covers.json, labels.json, beliefs.jsonl and, when ground
/// truth is available, metrics.json and metrics.txt into out_dir.
PipelineSummary run_pipeline(const RunConfig& config, const std::string& out_dir);

} // namespace strata::app
