#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "strata/error.hpp"
#include "strata/semantics.hpp"
#include "strata/synthlab.hpp"

using namespace strata;

namespace {

geom::Rect R(std::string id, double x, double y, double w, double h) { return {std::move(id), x, y, w, h, {}}; }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_SUITE("semantics") {

TEST_CASE("nested pair") {
    const std::vector<geom::Rect> scene{R("outer", 0, 0, 10, 10), R("inner", 2, 2, 3, 3)};
    const kg::LayeredGraph g = sem::build_l1(scene, {});
    CHECK(g.query("contains", "outer", "inner"));
    CHECK(g.query("inside", "inner", "outer"));
    CHECK(g.query("is_floating", "inner", sem::kFloatingMarker));
    CHECK_FALSE(g.query("is_floating", "outer", sem::kFloatingMarker));
    CHECK(g.edge_count() == 3);
    CHECK(g.audit().empty());
    for (const auto& [key, e] : g.edges()) {
        CHECK(e.tv == kg::TruthValue{1.0, kg::kObservationConfidence});
        CHECK(e.stamp.size() == 1);
    }
    CHECK(g.find_node("inner")->payload.at("area") == 9);
}

TEST_CASE("empty scene") {
    const kg::LayeredGraph g = sem::build_l1(std::vector<geom::Rect>{}, {});
    CHECK(g.edge_count() == 0);
    CHECK(sem::emit_premises(g).empty());
}

TEST_CASE("duplicate rect ids") {
    const std::vector<geom::Rect> scene{R("a", 0, 0, 1, 1), R("a", 5, 5, 1, 1)};
    try {
        sem::build_l1(scene, {});
        FAIL("expected duplicate id");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::duplicate_rect_id);
    }
}

TEST_CASE("premise grammar") {
    sem::Fact f{"contains", "r1", "r2", false, {1.0, 0.9}, kg::Stamp::single(1)};
    CHECK(sem::format_premise(f) == "<(*,r1,r2) --> contains>. %1.00;0.90%");
    const auto parsed = sem::parse_premise("<(*,r1,12.5) --> width>. %1.00;0.90%");
    REQUIRE(parsed);
    CHECK(parsed->predicate == "width");
    CHECK(parsed->object == "12.5");
    CHECK(parsed->confidence == doctest::Approx(0.9));
    CHECK_FALSE(sem::parse_premise("contains(r1, r2)"));
}

TEST_CASE("line count, determinism and round trip on a generated scene") {
    synth::SceneSpec spec;
    spec.seed = 4;
    spec.n_shelf_rows = 4;
    spec.n_distractors = 6;
    const geom::Scene scene = synth::generate_scene(spec);
    const kg::LayeredGraph g = sem::build_l1(scene.rects, scene.params);
    const auto lines = sem::emit_premises(g);
    CHECK(lines.size() == g.edge_count() + 8 * scene.rects.size());

    const std::string text = sem::premises_text(lines);
    CHECK(text == sem::premises_text(sem::emit_premises(sem::build_l1(scene.rects, scene.params))));
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);

    // Parsed relation lines reproduce the edge multiset.
    std::multiset<std::tuple<std::string, std::string, std::string>> from_text, from_graph;
    std::set<std::uint64_t> ids;
    for (const auto& line : lines) {
        ids.insert(line.id);
        const auto p = sem::parse_premise(line.text);
        REQUIRE(p);
        if (!p->is_attribute)
            from_text.insert({p->predicate, p->subject, p->object});
    }
    for (const auto& [key, e] : g.edges())
        from_graph.insert({e.relation, e.from, e.to});
    CHECK(from_text == from_graph);
    CHECK(ids.size() == lines.size());
    CHECK(lines_of(text).size() == lines.size());
}

TEST_CASE("edge set is invariant under scene permutation") {
    synth::SceneSpec spec;
    spec.seed = 9;
    spec.n_shelf_rows = 3;
    geom::Scene scene = synth::generate_scene(spec);
    const kg::LayeredGraph g = sem::build_l1(scene.rects, scene.params);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(scene.rects.begin(), scene.rects.end(), rng);
        const kg::LayeredGraph h = sem::build_l1(scene.rects, scene.params);
        CHECK(h.edges() == g.edges());
    }
}

TEST_CASE("rects survive the graph") {
    const std::vector<geom::Rect> scene{R("a", 1.5, 2, 3, 4), R("b", 10, 0, 2, 2)};
    CHECK(sem::rects_from_graph(sem::build_l1(scene, {})) == scene);
}

} // TEST_SUITE
