#include "strata/app.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "strata/error.hpp"
#include "strata/graph_io.hpp"
#include "strata/rng.hpp"
#include "strata/semantics.hpp"

namespace strata::app {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::file_not_found, path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::file_not_found, "cannot write " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    write_file(path, doc.dump(2) + "\n");
}

reason::Budget budget_from_json(const nlohmann::json& doc, reason::Budget b) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "budget must be an object");
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "wm_capacity") {
                if (v.is_string() && v.get<std::string>() == "unbounded")
                    b.wm_capacity = std::numeric_limits<std::size_t>::max();
                else
                    b.wm_capacity = v.get<std::size_t>();
            } else if (key == "max_iterations") {
                b.max_iterations = v.get<int>();
            } else if (key == "delta") {
                b.delta = v.get<double>();
            } else {
                throw Error(ErrorCode::parse_error, "unknown budget key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
    b.validate();
    return b;
}

nlohmann::json to_json(const reason::Budget& b) {
    nlohmann::json cap = b.wm_capacity == std::numeric_limits<std::size_t>::max()
                             ? nlohmann::json("unbounded")
                             : nlohmann::json(b.wm_capacity);
    return {{"wm_capacity", cap}, {"max_iterations", b.max_iterations}, {"delta", b.delta}};
}

foa::FoaParams foa_params_from_json(const nlohmann::json& doc, foa::FoaParams p) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "foa params must be an object");
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "max_cover_size")
                p.max_cover_size = v.get<std::size_t>();
            else if (key == "min_cover_size")
                p.min_cover_size = v.get<std::size_t>();
            else
                throw Error(ErrorCode::parse_error, "unknown foa key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
    p.validate();
    return p;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty() || fs::path(path).is_absolute())
        return path;
    return (fs::path(base_dir) / path).string();
}

} // namespace

RunConfig config_from_json(const nlohmann::json& doc, const std::string& base_dir) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "config must be a JSON object");
    RunConfig c;
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "seed") {
                c.seed = v.get<std::uint64_t>();
            } else if (key == "scene") {
                c.scene = synth::spec_from_json(v);
                c.scene_seed_explicit = v.contains("seed");
            } else if (key == "scene_file") {
                c.scene_file = resolve(base_dir, v.get<std::string>());
            } else if (key == "image_file") {
                c.image_file = resolve(base_dir, v.get<std::string>());
            } else if (key == "geom") {
                c.geom = geom::params_from_json(v);
            } else if (key == "budget") {
                c.budget = budget_from_json(v);
            } else if (key == "foa") {
                c.foa = foa_params_from_json(v);
            } else if (key == "hough") {
                c.hough = percept::hough_from_json(v);
            } else if (key == "use_foa") {
                c.use_foa = v.get<bool>();
            } else if (key == "theta") {
                c.theta = v.get<double>();
            } else if (key == "expert_axioms") {
                c.axioms = v.is_string()
                               ? reason::axioms_from_json(read_json(resolve(base_dir, v.get<std::string>())))
                               : reason::axioms_from_json(v);
            } else {
                throw Error(ErrorCode::parse_error, "unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
    if (!(c.theta >= 0 && c.theta <= 1))
        throw Error(ErrorCode::invalid_argument, "theta must lie in [0,1]");
    return c;
}

RunConfig load_config(const std::string& path) {
    return config_from_json(read_json(path), fs::path(path).parent_path().string());
}

std::map<std::string, reason::Label> load_truth(const std::string& path) {
    const nlohmann::json doc = read_json(path);
    if (doc.is_object() && doc.contains("rects"))
        return synth::truth_labels(geom::scene_from_json(doc));
    return reason::labels_from_json(doc);
}

PipelineSummary run_pipeline(const RunConfig& config, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorCode::file_not_found, "cannot create " + out_dir + ": " + ec.message());
    auto out = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    // Scene source.
    geom::Scene scene;
    double noise = 0.0;
    if (!config.image_file.empty()) {
        const percept::GrayImage img = percept::load_pgm_file(config.image_file);
        const auto segments =
            percept::detect_segments(img, config.hough, stage_seed(config.seed, "percept"));
        scene.rects = percept::assemble_rects(segments);
    } else if (!config.scene_file.empty()) {
        scene = geom::scene_from_json(read_json(config.scene_file));
    } else {
        synth::SceneSpec spec = config.scene.value_or(synth::SceneSpec{});
        if (!config.scene_seed_explicit)
            spec.seed = stage_seed(config.seed, "synthlab");
        scene = synth::generate_scene(spec, config.geom.value_or(geom::GeomParams{}));
        noise = spec.relation_noise;
    }
    if (config.geom)
        scene.params = *config.geom;
    write_json(out("scene.json"), geom::to_json(scene));
    percept::write_pgm_file(out("scene.pgm"), synth::render_outline(scene));

    // L1 graph and premises.
    kg::LayeredGraph g = sem::build_l1(scene.rects, scene.params);
    if (noise > 0)
        g = synth::apply_relation_noise(g, noise, stage_seed(config.seed, "noise"));
    write_json(out("graph.json"), kg::to_json(g));
    const auto premises = sem::emit_premises(g);
    write_file(out("premises.nal"), sem::premises_text(premises));

    // Reasoning.
    foa::ReasonOptions opts;
    opts.budget = config.budget;
    opts.theta = config.theta;
    opts.axioms = config.axioms;
    const foa::FoaResult result = config.use_foa
                                      ? foa::reason_with_foa(scene.rects, g, config.foa, opts)
                                      : foa::reason_whole(g, opts);
    write_json(out("covers.json"), foa::covers_to_json(result.covers));
    write_json(out("labels.json"), reason::labels_to_json(result.labels));
    std::string beliefs;
    for (const reason::Belief& b : result.beliefs)
        beliefs += reason::belief_to_json(b).dump() + "\n";
    write_file(out("beliefs.jsonl"), beliefs);

    PipelineSummary summary;
    summary.rects = scene.rects.size();
    summary.edges = g.edge_count();
    summary.premises = premises.size();
    summary.covers = result.covers.size();

    const bool labelled = !scene.rects.empty() &&
                          std::all_of(scene.rects.begin(), scene.rects.end(),
                                      [](const geom::Rect& r) { return r.label.has_value(); });
    if (labelled) {
        const synth::MetricsReport m = synth::score(result.labels, synth::truth_labels(scene));
        write_json(out("metrics.json"), synth::to_json(m));
        write_file(out("metrics.txt"),
                   synth::format_table({{config.use_foa ? "With FoA" : "Without FoA", m}}));
        summary.metrics = m;
    }
    return summary;
}

} // namespace strata::app
