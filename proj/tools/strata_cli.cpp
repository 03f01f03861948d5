// strata: command-line driver for the shelf-scene pipeline.

#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "strata/app.hpp"
#include "strata/error.hpp"
#include "strata/graph_io.hpp"
#include "strata/rng.hpp"
#include "strata/semantics.hpp"

using namespace strata;

namespace {

struct Args {
    std::string spec, out, render, image, segments, scene, premises, graph, covers, beliefs, pred,
        truth, dot, config, out_dir, axioms, hough;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double noise = 0.0;
    bool foa = true;
    bool no_foa = false;
    bool table = false;
    bool unbounded = false;
    std::size_t wm_capacity = 0;
    int max_iterations = 0;
    double delta = 0.0;
    double theta = reason::kDefaultTheta;
    std::size_t max_cover = 0, min_cover = 0;
};

int cmd_gen(const Args& a) {
    synth::SceneSpec spec = synth::spec_from_json(app::read_json(a.spec));
    if (a.seed_set)
        spec.seed = a.seed;
    const geom::Scene scene = synth::generate_scene(spec);
    app::write_json(a.out, geom::to_json(scene));
    if (!a.render.empty())
        percept::write_pgm_file(a.render, synth::render_outline(scene));
    std::cout << "generated " << scene.rects.size() << " rects -> " << a.out << "\n";
    return 0;
}

int cmd_extract(const Args& a) {
    percept::HoughParams hp;
    if (!a.hough.empty())
        hp = percept::hough_from_json(app::read_json(a.hough));
    const percept::GrayImage img = percept::load_pgm_file(a.image);
    const auto segs = percept::detect_segments(img, hp, a.seed);
    geom::Scene scene;
    scene.rects = percept::assemble_rects(segs);
    app::write_json(a.out, geom::to_json(scene));
    if (!a.segments.empty())
        app::write_json(a.segments, percept::segments_to_json(segs));
    std::cout << segs.size() << " segments, " << scene.rects.size() << " rects -> " << a.out << "\n";
    return 0;
}

int cmd_relate(const Args& a) {
    const geom::Scene scene = geom::scene_from_json(app::read_json(a.scene));
    kg::LayeredGraph g = sem::build_l1(scene.rects, scene.params);
    if (a.noise > 0)
        g = synth::apply_relation_noise(g, a.noise, stage_seed(a.seed, "noise"));
    app::write_json(a.out, kg::to_json(g));
    if (!a.premises.empty())
        app::write_file(a.premises, sem::premises_text(sem::emit_premises(g)));
    std::cout << g.nodes().size() << " nodes, " << g.edge_count() << " edges -> " << a.out << "\n";
    return 0;
}

int cmd_reason(const Args& a) {
    const kg::LayeredGraph g = kg::graph_from_json(app::read_json(a.graph));
    foa::ReasonOptions opts;
    if (a.unbounded)
        opts.budget = reason::Budget::unbounded();
    if (a.wm_capacity > 0)
        opts.budget.wm_capacity = a.wm_capacity;
    if (a.max_iterations > 0)
        opts.budget.max_iterations = a.max_iterations;
    if (a.delta > 0)
        opts.budget.delta = a.delta;
    opts.budget.validate();
    opts.theta = a.theta;
    if (!a.axioms.empty())
        opts.axioms = reason::axioms_from_json(app::read_json(a.axioms));
    foa::FoaParams fp;
    if (a.max_cover > 0)
        fp.max_cover_size = a.max_cover;
    if (a.min_cover > 0)
        fp.min_cover_size = a.min_cover;
    fp.validate();

    foa::FoaResult r;
    if (a.no_foa) {
        r = foa::reason_whole(g, opts);
    } else {
        const auto rects = sem::rects_from_graph(g);
        r = foa::reason_with_foa(rects, g, fp, opts);
    }
    app::write_json(a.out, reason::labels_to_json(r.labels));
    if (!a.covers.empty())
        app::write_json(a.covers, foa::covers_to_json(r.covers));
    if (!a.beliefs.empty()) {
        std::string lines;
        for (const auto& b : r.beliefs)
            lines += reason::belief_to_json(b).dump() + "\n";
        app::write_file(a.beliefs, lines);
    }
    std::cout << r.labels.size() << " labels (" << (a.no_foa ? "whole graph" : "foa") << ", "
              << r.covers.size() << " covers) -> " << a.out << "\n";
    return 0;
}

int cmd_eval(const Args& a) {
    const auto pred = reason::labels_from_json(app::read_json(a.pred));
    const auto truth = app::load_truth(a.truth);
    const synth::MetricsReport m = synth::score(pred, truth);
    if (!a.out.empty())
        app::write_json(a.out, synth::to_json(m));
    if (a.table)
        std::cout << synth::format_table({{"result", m}});
    else
        std::cout << "accuracy " << m.accuracy << "% over " << m.total << " rects\n";
    return 0;
}

int cmd_pipeline(const Args& a) {
    const app::RunConfig cfg = app::load_config(a.config);
    const app::PipelineSummary s = app::run_pipeline(cfg, a.out_dir);
    std::cout << s.rects << " rects, " << s.edges << " edges, " << s.premises << " premises, "
              << s.covers << " covers";
    if (s.metrics)
        std::cout << ", accuracy " << s.metrics->accuracy << "%";
    std::cout << " -> " << a.out_dir << "\n";
    return 0;
}

int cmd_export(const Args& a) {
    const kg::LayeredGraph g = kg::graph_from_json(app::read_json(a.graph));
    app::write_file(a.dot, kg::to_dot(g));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Shelf-scene perception and reasoning pipeline"};
    cli.require_subcommand(1);
    Args a;

    auto* gen = cli.add_subcommand("gen", "Generate a labelled synthetic shelf scene");
    gen->add_option("--spec", a.spec, "Scene spec JSON")->required();
    gen->add_option("--out", a.out, "Scene JSON output")->required();
    gen->add_option("--render", a.render, "Outline image output (PGM)");
    auto* gen_seed = gen->add_option("--seed", a.seed, "Override the spec seed");

    auto* extract = cli.add_subcommand("extract", "Detect rectangles in a PGM image");
    extract->add_option("--image", a.image, "Input PGM")->required();
    extract->add_option("--out", a.out, "Scene JSON output")->required();
    extract->add_option("--segments", a.segments, "Segment dump output");
    extract->add_option("--hough", a.hough, "Hough parameter JSON");
    extract->add_option("--seed", a.seed, "Sampling seed");

    auto* relate = cli.add_subcommand("relate", "Build the L1 relation graph of a scene");
    relate->add_option("--scene", a.scene, "Scene JSON")->required();
    relate->add_option("--out", a.out, "Graph JSON output")->required();
    relate->add_option("--premises", a.premises, "Premise text output");
    relate->add_option("--noise", a.noise, "Relation noise rate")->check(CLI::Range(0.0, 1.0));
    relate->add_option("--seed", a.seed, "Noise seed");

    auto* reason_cmd = cli.add_subcommand("reason", "Label rects from a relation graph");
    reason_cmd->add_option("--graph", a.graph, "Graph JSON")->required();
    reason_cmd->add_option("--out", a.out, "Labels JSON output")->required();
    reason_cmd->add_flag("--foa,!--no-foa", a.foa, "Reason per attention cover (default)");
    reason_cmd->add_option("--covers", a.covers, "Cover dump output");
    reason_cmd->add_option("--beliefs", a.beliefs, "Belief dump output (JSON lines)");
    reason_cmd->add_option("--wm-capacity", a.wm_capacity, "Working-memory capacity");
    reason_cmd->add_flag("--unbounded", a.unbounded, "Unbounded working memory");
    reason_cmd->add_option("--max-iterations", a.max_iterations, "Fixpoint iteration cap");
    reason_cmd->add_option("--delta", a.delta, "Convergence threshold");
    reason_cmd->add_option("--theta", a.theta, "Labelling threshold")->check(CLI::Range(0.0, 1.0));
    reason_cmd->add_option("--axioms", a.axioms, "Expert axiom JSON");
    reason_cmd->add_option("--max-cover", a.max_cover, "Maximum cover size");
    reason_cmd->add_option("--min-cover", a.min_cover, "Minimum seed cover size");

    auto* eval = cli.add_subcommand("eval", "Score labels against ground truth");
    eval->add_option("--pred", a.pred, "Predicted labels JSON")->required();
    eval->add_option("--truth", a.truth, "Labelled scene or labels JSON")->required();
    eval->add_option("--out", a.out, "Metrics JSON output");
    eval->add_flag("--table", a.table, "Print the results table");

    auto* pipeline = cli.add_subcommand("pipeline", "Run every stage from a config file");
    pipeline->add_option("--config", a.config, "Run config JSON")->required();
    pipeline->add_option("--out-dir", a.out_dir, "Output directory")->required();

    auto* exp = cli.add_subcommand("export", "Export a graph as Graphviz DOT");
    exp->add_option("--graph", a.graph, "Graph JSON")->required();
    exp->add_option("--dot", a.dot, "DOT output")->required();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e);
    }
    a.no_foa = !a.foa;
    a.seed_set = gen_seed->count() > 0;

    try {
        if (gen->parsed()) return cmd_gen(a);
        if (extract->parsed()) return cmd_extract(a);
        if (relate->parsed()) return cmd_relate(a);
        if (reason_cmd->parsed()) return cmd_reason(a);
        if (eval->parsed()) return cmd_eval(a);
        if (pipeline->parsed()) return cmd_pipeline(a);
        if (exp->parsed()) return cmd_export(a);
    } catch (const Error& e) {
        std::cerr << "strata: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "strata: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
