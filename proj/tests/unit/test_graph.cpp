#include <doctest.h>

#include "../support/graph_ops.hpp"
#include "strata/error.hpp"
#include "strata/graph.hpp"
#include "strata/graph_io.hpp"

using namespace strata;
using namespace strata::kg;

namespace {

LayeredGraph two_node_graph() {
    LayeredGraph g;
    g.registry().add({"contains", Symmetry::antisymmetric, Layer::L1});
    g.registry().add({"above", Symmetry::antisymmetric, Layer::L1});
    g.add_node({"a", Layer::L1, NodeKind::percept, {}});
    g.add_node({"b", Layer::L1, NodeKind::percept, {}});
    g.add_node({"c", Layer::L2, NodeKind::concept_node, {}});
    return g;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("innate registry") {
    RelationRegistry r;
    CHECK(r.all().size() == 2);
    CHECK(r.find("distinction")->symmetry == Symmetry::antisymmetric);
    CHECK(r.find("similarity")->symmetry == Symmetry::symmetric);
    CHECK_THROWS_AS(r.add({"similarity", Symmetry::antisymmetric, Layer::L1}), Error);
}

TEST_CASE("antisymmetric assert never creates the inverse") {
    LayeredGraph g = two_node_graph();
    g.assert_edge({"contains", "a", "b", {1, 0.9}, Stamp::single(1)});
    CHECK(g.query("contains", "a", "b"));
    CHECK_FALSE(g.query("contains", "b", "a"));
}

TEST_CASE("symmetric edges answer both orders") {
    LayeredGraph g = two_node_graph();
    g.assert_edge({"similarity", "b", "a", {0.7, 0.6}, Stamp::single(1)});
    const Edge* ab = g.query("similarity", "a", "b");
    const Edge* ba = g.query("similarity", "b", "a");
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(ab->tv == ba->tv);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("layer discipline") {
    LayeredGraph g = two_node_graph();
    try {
        g.assert_edge({"above", "a", "c", {1, 0.9}, Stamp::single(1)});
        FAIL("expected layer violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::layer_violation);
    }
    g.registry().add({std::string(kAbstracts), Symmetry::antisymmetric, Layer::L1});
    CHECK_NOTHROW(g.assert_edge({std::string(kAbstracts), "a", "c", {1, 0.9}, Stamp::single(2)}));
    CHECK_THROWS_AS(g.assert_edge({std::string(kAbstracts), "c", "a", {1, 0.9}, Stamp::single(3)}), Error);
    CHECK(g.audit().empty());
}

TEST_CASE("unknown relation and node") {
    LayeredGraph g = two_node_graph();
    try {
        g.assert_edge({"beside", "a", "b", {1, 0.9}, Stamp::single(1)});
        FAIL("expected unknown relation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unknown_relation);
    }
    try {
        g.assert_edge({"contains", "a", "zz", {1, 0.9}, Stamp::single(1)});
        FAIL("expected unknown node");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unknown_node);
    }
}

TEST_CASE("repeated assert revises or chooses") {
    LayeredGraph g = two_node_graph();
    CHECK(g.assert_edge({"contains", "a", "b", {1, 0.5}, Stamp::single(1)}) == AssertOutcome::inserted);
    CHECK(g.assert_edge({"contains", "a", "b", {1, 0.5}, Stamp::single(2)}) == AssertOutcome::revised);
    CHECK(g.query("contains", "a", "b")->tv.confidence == doctest::Approx(2.0 / 3.0));
    // Overlapping stamp: weaker evidence is ignored, stronger replaces.
    CHECK(g.assert_edge({"contains", "a", "b", {1, 0.3}, Stamp::single(2)}) == AssertOutcome::kept_existing);
    CHECK(g.assert_edge({"contains", "a", "b", {0, 0.8}, Stamp({1, 5})}) == AssertOutcome::replaced);
    CHECK(g.query("contains", "a", "b")->tv.frequency == 0.0);
}

TEST_CASE("merge examples") {
    LayeredGraph g1 = two_node_graph(), g2 = two_node_graph();
    g1.assert_edge({"contains", "a", "b", {1, 0.5}, Stamp::single(1)});
    g2.assert_edge({"contains", "a", "b", {1, 0.5}, Stamp::single(2)});
    LayeredGraph m = merge_graphs(g1, g2);
    CHECK(m.query("contains", "a", "b")->tv.confidence == doctest::Approx(2.0 / 3.0));

    LayeredGraph id = merge_graphs(g1, LayeredGraph{});
    CHECK(id.nodes() == g1.nodes());
    CHECK(id.edges() == g1.edges());
    CHECK(merge_graphs(g1, g2).edges() == merge_graphs(g2, g1).edges());

    LayeredGraph bad;
    bad.registry().add({"contains", Symmetry::symmetric, Layer::L1});
    CHECK_THROWS_AS(merge_graphs(g1, bad), Error);
}

TEST_CASE("randomized assert/merge workload preserves structure") {
    const auto rep = strata::testing::run_graph_workload(3, 2000);
    for (const auto& m : rep.messages)
        INFO(m);
    CHECK(rep.violations == 0);
}

TEST_CASE("json round trip and dot export") {
    LayeredGraph g = two_node_graph();
    g.assert_edge({"contains", "a", "b", {1, 0.9}, Stamp({3, 7})});
    g.assert_edge({"similarity", "a", "b", {0.25, 0.5}, Stamp::single(9)});
    const LayeredGraph back = graph_from_json(to_json(g));
    CHECK(back.nodes() == g.nodes());
    CHECK(back.edges() == g.edges());
    CHECK(back.registry().all() == g.registry().all());

    const std::string dot = to_dot(g);
    CHECK(dot.find("contains 1.00;0.90") != std::string::npos);
    CHECK(dot.find("dir=none") != std::string::npos);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"nodes": 3})")), Error);
}

} // TEST_SUITE
