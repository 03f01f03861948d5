#include <doctest.h>

#include "../support/outline_images.hpp"
#include "strata/error.hpp"
#include "strata/percept.hpp"

using namespace strata;
using namespace strata::percept;

namespace {

ErrorCode code_of(std::string_view bytes) {
    try {
        load_pgm(bytes);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::invalid_argument;
}

Segment H(int x0, int x1, int y) { return {{x0, y}, {x1, y}, Orientation::horizontal}; }
Segment V(int x, int y0, int y1) { return {{x, y0}, {x, y1}, Orientation::vertical}; }

// Independent oracle: maximal runs of lit pixels along rows/columns.
std::vector<Segment> run_scan(const GrayImage& img, int min_len) {
    std::vector<Segment> out;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width;) {
            int e = x;
            while (e < img.width && img.at(e, y))
                ++e;
            if (e - x >= min_len)
                out.push_back(H(x, e - 1, y));
            x = e + 1;
        }
    for (int x = 0; x < img.width; ++x)
        for (int y = 0; y < img.height;) {
            int e = y;
            while (e < img.height && img.at(x, e))
                ++e;
            if (e - y >= min_len)
                out.push_back(V(x, y, e - 1));
            y = e + 1;
        }
    return out;
}

bool near(const Segment& a, const Segment& b, int tol) {
    return a.orientation == b.orientation && std::abs(a.p0.x - b.p0.x) <= tol && std::abs(a.p0.y - b.p0.y) <= tol &&
           std::abs(a.p1.x - b.p1.x) <= tol && std::abs(a.p1.y - b.p1.y) <= tol;
}

} // namespace

TEST_SUITE("percept") {

TEST_CASE("pgm parsing") {
    const GrayImage img = load_pgm("P2 2 2 255 0 255 255 0");
    CHECK(img.width == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 255, 0});
    CHECK(code_of(std::string("P5 2 2 255\n") + std::string(3, '\x01')) == ErrorCode::truncated_data);
    CHECK(code_of("P3 1 1 255 0 0 0") == ErrorCode::bad_magic);
    CHECK(code_of("P2 1 1 65535 0") == ErrorCode::maxval_overflow);
    CHECK(code_of("P2 2 2 255 0 1 2") == ErrorCode::truncated_data);
    CHECK(load_pgm("P2\n# comment\n1 1\n# another\n15\n7\n").pixels == std::vector<std::uint8_t>{7});

    GrayImage rnd(7, 5);
    for (std::size_t i = 0; i < rnd.pixels.size(); ++i)
        rnd.pixels[i] = static_cast<std::uint8_t>(i * 37);
    CHECK(load_pgm(encode_pgm(rnd)) == rnd);
}

TEST_CASE("single horizontal line") {
    GrayImage img(64, 64, 0);
    for (int x = 5; x <= 40; ++x)
        img.at(x, 10) = 255;
    const auto segs = detect_segments(img, {}, 1);
    REQUIRE(segs.size() == 1);
    CHECK(near(segs[0], H(5, 40, 10), 1));
    CHECK(near(run_scan(img, 12)[0], segs[0], 1));
}

TEST_CASE("uniform images give nothing") {
    for (std::uint8_t v : {0, 128, 255}) {
        const GrayImage img(64, 48, v);
        CHECK(detect_segments(img, {}, 3).empty());
    }
}

TEST_CASE("rectangle outline gives four sides") {
    geom::Scene s;
    s.rects = {{"r", 10, 20, 20, 12, {}}};
    const GrayImage img = synth::render_outline(s);
    const auto segs = detect_segments(img, {}, 5);
    const auto oracle = run_scan(img, 12);
    REQUIRE(oracle.size() == 4);
    REQUIRE(segs.size() == 4);
    for (const auto& o : oracle) {
        bool hit = false;
        for (const auto& seg : segs)
            hit = hit || near(seg, o, 1);
        CHECK(hit);
    }
    const auto rects = assemble_rects(segs);
    REQUIRE(rects.size() == 1);
    CHECK(rects[0].x == 10);
    CHECK(rects[0].y == 20);
    CHECK(rects[0].w == 20);
    CHECK(rects[0].h == 12);
}

TEST_CASE("assembly examples") {
    // Perfect 20x12 box.
    auto rects = assemble_rects(std::vector<Segment>{H(0, 19, 0), H(0, 19, 11), V(0, 0, 11), V(19, 0, 11)});
    REQUIRE(rects.size() == 1);
    CHECK(rects[0] == geom::Rect{"r0", 0, 0, 20, 12, {}});
    // Open box.
    CHECK(assemble_rects(std::vector<Segment>{H(0, 19, 0), V(0, 0, 11), V(19, 0, 11)}).empty());
    // Shared vertical edge.
    rects = assemble_rects(
        std::vector<Segment>{H(0, 19, 0), H(19, 38, 0), H(0, 38, 11), V(0, 0, 11), V(19, 0, 11), V(38, 0, 11)});
    REQUIRE(rects.size() == 2);
    CHECK(rects[0].x == 0);
    CHECK(rects[0].w == 20);
    CHECK(rects[1].x == 19);
    CHECK(rects[1].w == 20);
    // Near-duplicate sides collapse to one rect.
    rects = assemble_rects(std::vector<Segment>{H(0, 19, 0), H(1, 19, 1), H(0, 19, 11), V(0, 0, 11), V(19, 0, 11)});
    CHECK(rects.size() == 1);
}

TEST_CASE("segments lie on edge pixels and are deterministic") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = testing::outline_case(seed);
        const HoughParams p;
        const auto edges = edge_map(c.image, p.edge_threshold);
        const auto segs = detect_segments(c.image, p, seed);
        CHECK(detect_segments(c.image, p, seed) == segs);
        for (const auto& s : segs) {
            CHECK(s.length() >= p.min_len);
            for (int y = s.p0.y; y <= s.p1.y; ++y)
                for (int x = s.p0.x; x <= s.p1.x; ++x)
                    CHECK(edges[std::size_t(y) * c.image.width + x] == 1);
        }
    }
}

TEST_CASE("recall on random outline images") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const auto c = testing::outline_case(seed);
        const auto rects = assemble_rects(detect_segments(c.image, {}, seed));
        CHECK(testing::recovered(c.truth.rects, rects, 2) == int(c.truth.rects.size()));
    }
}

TEST_CASE("hough params") {
    CHECK_THROWS_AS(hough_from_json(nlohmann::json::parse(R"({"min_len": 0})")), Error);
    CHECK_THROWS_AS(hough_from_json(nlohmann::json::parse(R"({"bogus": 1})")), Error);
    CHECK(hough_from_json(nlohmann::json::parse(R"({"max_gap": 5})")).max_gap == 5);
}

} // TEST_SUITE
