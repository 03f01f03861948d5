#include <doctest.h>

#include <random>

#include "../support/geometry_oracle.hpp"
#include "strata/error.hpp"
#include "strata/geometry.hpp"

using namespace strata;
using namespace strata::geom;

namespace {

Rect R(std::string id, double x, double y, double w, double h) { return {std::move(id), x, y, w, h, {}}; }

std::set<std::string> names(const std::vector<RelationInstance>& rs) {
    std::set<std::string> out;
    for (const auto& r : rs)
        out.insert(r.relation);
    return out;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("attributes") {
    auto a = attributes(R("a", 0, 0, 4, 2));
    CHECK(a["center_x"] == 2);
    CHECK(a["center_y"] == 1);
    CHECK(a["area"] == 8);
    CHECK(a["circumference"] == 12);
    auto b = attributes(R("b", 5, 7, 1, 1));
    CHECK(b["center_x"] == 5.5);
    CHECK(b["center_y"] == 7.5);
    CHECK(b["area"] == 1);
    CHECK(b["circumference"] == 4);
    auto s = attributes(R("s", 10, 20, 4, 2));
    CHECK(s["area"] == a["area"]);
    CHECK(s["circumference"] == a["circumference"]);
    CHECK(s["center_x"] == a["center_x"] + 10);
    CHECK(attributes(R("z", 0, 0, 1, 1)).size() == 8);
}

TEST_CASE("containment is directed") {
    const GeomParams p;
    const Rect a = R("a", 2, 2, 2, 2), b = R("b", 0, 0, 10, 10);
    CHECK(names(relations_between(a, b, p)).contains("inside"));
    CHECK_FALSE(names(relations_between(a, b, p)).contains("contains"));
    CHECK(names(relations_between(b, a, p)) .contains("contains"));
    CHECK_FALSE(names(relations_between(b, a, p)).contains("inside"));
}

TEST_CASE("on_top_of by hand") {
    const auto rs = names(relations_between(R("a", 2, 4, 2, 2), R("b", 0, 6, 10, 2), GeomParams{}));
    CHECK(rs.contains("on_top_of"));
    CHECK(rs.contains("above"));
}

TEST_CASE("gap gate") {
    CHECK(relations_between(R("a", 0, 0, 4, 4), R("b", 100, 0, 4, 4), GeomParams{}).empty());
    // Diagonal gap of 30*sqrt(2) ~ 42.4 exceeds 40 even though each axis gap is 30.
    CHECK(relations_between(R("a", 0, 0, 4, 4), R("b", 34, 34, 4, 4), GeomParams{}).empty());
    CHECK_FALSE(relations_between(R("a", 0, 0, 4, 4), R("b", 30, 0, 4, 4), GeomParams{}).empty());
}

TEST_CASE("alignment axes") {
    const GeomParams p;
    auto rs = names(relations_between(R("a", 0, 10, 5, 10), R("b", 8, 12, 5, 8), p));
    CHECK(rs.contains("aligned_h"));
    CHECK_FALSE(rs.contains("aligned_v"));
    rs = names(relations_between(R("a", 0, 0, 20, 10), R("b", 1, 10, 21, 10), p));
    CHECK(rs.contains("aligned_v"));
    CHECK(rs.contains("on_top_of"));
}

TEST_CASE("floating") {
    const GeomParams p;
    const Rect box = R("box", 0, 0, 10, 10);
    std::vector<Rect> scene{box, R("a", 2, 2, 3, 3)};
    CHECK(floating(scene[1], scene, p));
    scene[1] = R("a", 2, 7, 3, 3);
    CHECK_FALSE(floating(scene[1], scene, p));
    scene = {box, R("a", 2, 2, 3, 3), R("c", 2, 5, 3, 3)};
    CHECK_FALSE(floating(scene[1], scene, p));
    CHECK_FALSE(floating(box, scene, p));
}

TEST_CASE("pixel oracle and antisymmetry on random pairs") {
    const auto rep = testing::run_geometry_oracle(21, 500);
    CHECK(rep.oracle_mismatches == 0);
    CHECK(rep.antisymmetry_violations == 0);
    CHECK(rep.alignment_asymmetries == 0);
}

TEST_CASE("translation invariance") {
    std::mt19937_64 rng(5);
    const GeomParams p;
    std::uniform_int_distribution<int> t(-500, 500);
    for (int i = 0; i < 300; ++i) {
        Rect a = testing::random_rect(rng, "a", 1), b = testing::random_rect(rng, "b", 1);
        const auto base = relations_between(a, b, p);
        const int dx = t(rng), dy = t(rng);
        a.x += dx; b.x += dx;
        a.y += dy; b.y += dy;
        CHECK(relations_between(a, b, p) == base);
    }
}

TEST_CASE("scene json") {
    Scene s;
    s.rects = {R("a", 1, 2, 3, 4), R("b", 0, 0, 10, 10)};
    s.rects[0].label = "product";
    s.params.neighbor_gap = 25;
    const Scene back = scene_from_json(to_json(s));
    CHECK(back.rects == s.rects);
    CHECK(back.params.neighbor_gap == 25);

    auto doc = to_json(s);
    doc["rects"][1]["id"] = "a";
    try {
        scene_from_json(doc);
        FAIL("expected duplicate id");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::duplicate_rect_id);
    }
    doc = to_json(s);
    doc["rects"][0]["w"] = 0;
    CHECK_THROWS_AS(scene_from_json(doc), Error);
    doc = to_json(s);
    doc["params"]["eps_bogus"] = 1;
    CHECK_THROWS_AS(scene_from_json(doc), Error);
}

} // TEST_SUITE
