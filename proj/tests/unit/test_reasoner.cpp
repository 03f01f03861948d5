#include <doctest.h>

#include <algorithm>
#include <random>

#include "strata/reasoner.hpp"
#include "strata/semantics.hpp"
#include "strata/synthlab.hpp"

using namespace strata;
using reason::Category;
using reason::Label;

namespace {

// Hand-built L1 graph: percept nodes plus explicit observed edges.
struct Hand {
    kg::LayeredGraph g;
    std::uint64_t next = 1;

    explicit Hand(std::initializer_list<const char*> ids) {
        sem::register_spatial_relations(g.registry());
        for (const char* id : ids)
            g.add_node({id, kg::Layer::L1, kg::NodeKind::percept, {}});
        g.add_node({std::string(sem::kFloatingMarker), kg::Layer::L1, kg::NodeKind::attribute, {}});
    }
    Hand& edge(std::string_view rel, std::string from, std::string to, double c = 0.9) {
        g.assert_edge({std::string(rel), std::move(from), std::move(to), {1.0, c}, kg::Stamp::single(next++)});
        return *this;
    }
    Hand& floats(std::string id) { return edge(sem::kIsFloating, std::move(id), std::string(sem::kFloatingMarker)); }
};

const reason::Belief* find(const std::vector<reason::Belief>& bs, std::string_view subject, Category c) {
    for (const auto& b : bs)
        if (b.subject == subject && b.category == c)
            return &b;
    return nullptr;
}

reason::Belief belief(std::string s, Category c, double f, double conf, std::uint64_t id) {
    return {std::move(s), c, {{f, conf}, kg::Stamp::single(id)}};
}

} // namespace

TEST_SUITE("reasoner") {

TEST_CASE("R1 on a non-floating contained rect") {
    Hand h{"o", "i"};
    h.edge("contains", "o", "i");
    const auto r = reason::infer(h.g, {});
    REQUIRE(r.beliefs.size() == 2);
    const auto* shelf = find(r.beliefs, "o", Category::shelf);
    const auto* product = find(r.beliefs, "i", Category::product);
    REQUIRE(shelf);
    REQUIRE(product);
    CHECK(shelf->evidence.tv.frequency == doctest::Approx(1.0));
    CHECK(shelf->evidence.tv.confidence == doctest::Approx(0.81));
    CHECK(product->evidence.tv.confidence == doctest::Approx(0.81));
}

TEST_CASE("R1 is blocked by floating") {
    Hand h{"o", "i"};
    h.edge("contains", "o", "i").floats("i");
    CHECK(reason::infer(h.g, {}).beliefs.empty());
}

TEST_CASE("no relations, no beliefs") {
    Hand h{"lonely"};
    CHECK(reason::infer(h.g, {}).beliefs.empty());
    CHECK(reason::infer(kg::LayeredGraph{}, {}).beliefs.empty());
}

TEST_CASE("R3 chains through horizontal alignment") {
    Hand h{"s", "p", "r"};
    h.edge("contains", "s", "p").edge("aligned_h", "r", "p");
    const auto r = reason::infer(h.g, {});
    const auto* pr = find(r.beliefs, "r", Category::product);
    REQUIRE(pr);
    CHECK(pr->evidence.tv.confidence == doctest::Approx(0.729));
    // Vertical alignment does not carry product.
    Hand v{"s", "p", "r"};
    v.edge("contains", "s", "p").edge("aligned_v", "r", "p");
    CHECK_FALSE(find(reason::infer(v.g, {}).beliefs, "r", Category::product));
}

TEST_CASE("R2 on either axis, directed") {
    Hand h{"s", "p", "t", "u"};
    h.edge("contains", "s", "p").edge("aligned_v", "t", "s").edge("aligned_h", "u", "s");
    const auto r = reason::infer(h.g, {});
    REQUIRE(find(r.beliefs, "t", Category::shelf));
    CHECK(find(r.beliefs, "t", Category::shelf)->evidence.tv.confidence == doctest::Approx(0.729));
    CHECK(find(r.beliefs, "u", Category::shelf));
    // aligned_v(s, t) alone says nothing about t.
    Hand back{"s", "p", "t"};
    back.edge("contains", "s", "p").edge("aligned_v", "s", "t");
    CHECK_FALSE(find(reason::infer(back.g, {}).beliefs, "t", Category::shelf));
}

TEST_CASE("R4 labels a floating rect resting on a product") {
    Hand h{"s", "p", "r"};
    h.edge("contains", "s", "p").floats("r").edge("on_top_of", "r", "p");
    const auto r = reason::infer(h.g, {});
    const auto* pr = find(r.beliefs, "r", Category::product);
    REQUIRE(pr);
    CHECK(pr->evidence.tv.confidence == doctest::Approx(0.9 * 0.9 * 0.81));
}

TEST_CASE("expert axioms supply missing directions") {
    Hand h{"s", "p", "q"};
    h.edge("inside", "p", "s").edge("aligned_h", "p", "q");
    CHECK(reason::infer(h.g, {}).beliefs.empty());
    const auto axioms = reason::axioms_from_json(nlohmann::json::parse(
        R"({"symmetric": ["aligned"], "inverses": [["contains", "inside"]]})"));
    const auto r = reason::infer(h.g, {}, axioms);
    CHECK(find(r.beliefs, "s", Category::shelf));
    CHECK(find(r.beliefs, "p", Category::product));
    CHECK(find(r.beliefs, "q", Category::product));
    CHECK_THROWS(reason::axioms_from_json(nlohmann::json::parse(R"({"transitive": []})")));
}

TEST_CASE("confidence decays along a derivation chain") {
    Hand h{"s0", "p", "s1", "s2", "s3", "s4"};
    h.edge("contains", "s0", "p");
    const char* chain[] = {"s0", "s1", "s2", "s3", "s4"};
    for (int i = 1; i < 5; ++i)
        h.edge("aligned_v", chain[i], chain[i - 1]);
    reason::Budget b;
    b.max_iterations = 20;
    const auto r = reason::infer(h.g, b);
    double prev = 0.9;
    for (const char* id : chain) {
        const auto* s = find(r.beliefs, id, Category::shelf);
        REQUIRE(s);
        CHECK(s->evidence.tv.confidence < prev);
        prev = s->evidence.tv.confidence;
    }
}

TEST_CASE("working-memory cap drops premises in order") {
    Hand h{"o", "i"};
    h.edge("contains", "o", "i");
    reason::Budget b;
    b.wm_capacity = 1;
    auto r = reason::infer(h.g, b);
    CHECK(r.premises_total == 1);
    CHECK(r.premises_admitted == 1);
    CHECK(r.beliefs.size() == 2);
    // Higher-confidence facts are admitted first.
    Hand k{"o", "i", "x", "y"};
    k.edge("above", "x", "y", 0.95).edge("contains", "o", "i", 0.5);
    r = reason::infer(k.g, b);
    CHECK(r.beliefs.empty());
}

TEST_CASE("determinism and fixpoint on generated scenes") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        synth::SceneSpec spec;
        spec.seed = seed;
        spec.n_shelf_rows = 3;
        spec.n_distractors = 4;
        const auto scene = synth::generate_scene(spec);
        const auto g = synth::apply_relation_noise(sem::build_l1(scene.rects, scene.params), 0.1, seed);
        reason::Budget b = reason::Budget::unbounded();
        b.max_iterations = 40;
        const auto r1 = reason::infer(g, b);
        CHECK(r1.iterations < b.max_iterations);
        CHECK(reason::infer(g, b).beliefs == r1.beliefs);
        reason::Budget more = b;
        more.max_iterations = b.max_iterations + 1;
        CHECK(reason::infer(g, more).beliefs == r1.beliefs);
        for (const auto& belief : r1.beliefs)
            CHECK(belief.evidence.stamp.size() >= 1);
    }
}

TEST_CASE("classify") {
    using reason::classify;
    std::vector<reason::Belief> bs{belief("a", Category::shelf, 1, 0.81, 1)};
    CHECK(classify(bs).at("a") == Label::shelf);
    bs = {belief("a", Category::shelf, 1, 0.74, 1), belief("a", Category::product, 1, 0.86, 2)};
    CHECK(classify(bs).at("a") == Label::product);
    bs = {belief("a", Category::shelf, 1, 0.5, 1), belief("a", Category::product, 1, 0.5, 2)};
    CHECK(classify(bs).at("a") == Label::other); // tie
    bs = {belief("a", Category::shelf, 1, 0.05, 1)};
    CHECK(classify(bs).at("a") == Label::other); // e = 0.525 < theta
    const std::vector<std::string> ids{"a", "b"};
    CHECK(classify(std::vector<reason::Belief>{}, ids).at("b") == Label::other);
}

TEST_CASE("combine and merge are order-insensitive") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_int_distribution<int> id(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<kg::Evidence> cands;
        for (int i = 0; i < 5; ++i)
            cands.push_back({{u(rng), u(rng)}, kg::Stamp({std::uint64_t(id(rng)), std::uint64_t(id(rng))})});
        const kg::Evidence base = reason::combine(cands);
        std::shuffle(cands.begin(), cands.end(), rng);
        CHECK(reason::combine(cands) == base);
    }
    std::vector<std::vector<reason::Belief>> parts{
        {belief("a", Category::shelf, 1, 0.6, 1), belief("b", Category::product, 1, 0.7, 2)},
        {belief("a", Category::shelf, 1, 0.6, 3), belief("a", Category::product, 1, 0.9, 4)},
        {belief("a", Category::shelf, 0.2, 0.5, 1)}};
    const auto merged = reason::merge_beliefs(parts);
    std::reverse(parts.begin(), parts.end());
    CHECK(reason::merge_beliefs(parts) == merged);
    CHECK(find(merged, "a", Category::shelf)->evidence.tv.confidence == doctest::Approx(0.75));
}

TEST_CASE("belief and label json") {
    const reason::Belief b{"r1", Category::product, {{1.0, 0.81}, kg::Stamp({2, 5})}};
    CHECK(reason::belief_from_json(reason::belief_to_json(b)) == b);
    const std::map<std::string, Label> labels{{"a", Label::shelf}, {"b", Label::other}};
    CHECK(reason::labels_from_json(reason::labels_to_json(labels)) == labels);
    CHECK_THROWS(reason::labels_from_json(nlohmann::json::parse(R"({"a": "chair"})")));
}

} // TEST_SUITE
