#include "leleec/decomposer.hpp"
#include "leleec/error.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace leleec;
using leleec::test::feature;

namespace {

/// Graph-level instance: `n` vertices, conflict edges with optional candidate ids.
Graphs graph(int n, std::vector<ConflictEdge> edges, std::vector<std::pair<int, int>> cut_edges = {}) {
    Graphs g;
    for (int v = 0; v < n; ++v) g.layout.vertices.push_back({v, v, Polygon{{Rect::of(100 * v, 0, 100 * v + 10, 10)}}});
    g.layout.feature_count = n;
    for (auto [u, v] : cut_edges) {
        const int id = static_cast<int>(g.endcuts.nodes.size());
        g.endcuts.nodes.push_back({id, u, v, u, v, Rect::of(100 * id, 50, 100 * id + 1, 51), CutKind::edge_edge});
        for (auto& e : edges)
            if (e.u == u && e.v == v) e.candidate = id;
    }
    g.layout.conflict_edges = std::move(edges);
    return g;
}

Config quiet() {
    Config cfg = Config::from_rules(10, 10);
    cfg.enable_stitch = false;
    return cfg;
}

}  // namespace

TEST(Components, DistantFeaturesSplit) {
    const std::vector<Feature> fs{feature(0, 0, 0, 10, 10), feature(1, 1000, 0, 1010, 10), feature(2, 30, 0, 40, 10)};
    const auto g = build_graphs(fs, quiet());
    const auto comps = split_components(g.layout, g.endcuts);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].vertices, (std::vector<int>{0, 2}));
    EXPECT_EQ(comps[1].vertices, (std::vector<int>{1}));
    const auto d = decompose(fs, quiet());
    EXPECT_EQ(d.stats.components, 2);
    EXPECT_EQ(d.result.cost, 0);
}

TEST(Components, CutRelationsJoinComponents) {
    Graphs g = graph(4, {{0, 1, {}}, {2, 3, {}}}, {{0, 1}, {2, 3}});
    EXPECT_EQ(split_components(g.layout, g.endcuts).size(), 2u);
    g.endcuts.solid_edges = {{0, 1}};
    EXPECT_EQ(split_components(g.layout, g.endcuts).size(), 1u);
    g.endcuts.solid_edges.clear();
    g.endcuts.dash_edges = {{0, 1}};
    const auto comps = split_components(g.layout, g.endcuts);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].candidates, (std::vector<int>{0, 1}));
}

TEST(Components, NoRelationCrossesComponents) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto g = build_graphs(leleec::test::random_layout(seed, 30, 400), Config::from_rules(10, 10));
        const auto comps = split_components(g.layout, g.endcuts);
        std::vector<int> owner(g.layout.vertices.size(), -1), cut_owner(g.endcuts.nodes.size(), -1);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            for (int v : comps[c].vertices) owner[v] = static_cast<int>(c);
            for (int p : comps[c].candidates) cut_owner[p] = static_cast<int>(c);
        }
        for (int o : owner) ASSERT_GE(o, 0);
        for (const auto& e : g.layout.conflict_edges) ASSERT_EQ(owner[e.u], owner[e.v]);
        for (const auto& e : g.layout.stitch_edges) ASSERT_EQ(owner[e.u], owner[e.v]);
        for (const auto& c : g.endcuts.nodes) ASSERT_EQ(cut_owner[c.id], owner[c.vertex_a]);
        for (auto [p, q] : g.endcuts.solid_edges) ASSERT_EQ(cut_owner[p], cut_owner[q]);
        for (auto [p, q] : g.endcuts.dash_edges) ASSERT_EQ(cut_owner[p], cut_owner[q]);
    }
}

TEST(Bridges, PathSplitsIntoSingleVertices) {
    const Graphs g = graph(4, {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}});
    const auto pieces = split_bridges(SubProblem::whole(g.layout, g.endcuts), g.layout, g.endcuts);
    ASSERT_EQ(pieces.size(), 4u);
    EXPECT_EQ(pieces[0].vertices, (std::vector<int>{0}));
    EXPECT_TRUE(pieces[0].boundary.empty());
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        ASSERT_EQ(pieces[i].boundary.size(), 1u);
        EXPECT_EQ(pieces[i].boundary[0].v, static_cast<int>(i));
        EXPECT_EQ(pieces[i].boundary[0].u, static_cast<int>(i) - 1);
    }
    const auto d = decompose_graphs(g, quiet());
    EXPECT_EQ(d.stats.bridges_cut, 3);
    EXPECT_EQ(d.result.cost, 0);
    EXPECT_EQ(d.result.colors, (std::vector<int>{0, 1, 0, 1}));
}

TEST(Bridges, CandidateKeepsTheBridge) {
    const Graphs g = graph(3, {{0, 1, {}}, {1, 2, {}}}, {{0, 1}});
    const auto pieces = split_bridges(SubProblem::whole(g.layout, g.endcuts), g.layout, g.endcuts);
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(pieces[0].vertices, (std::vector<int>{0, 1}));
    EXPECT_EQ(pieces[0].candidates, (std::vector<int>{0}));
    EXPECT_EQ(pieces[1].vertices, (std::vector<int>{2}));
}

TEST(Bridges, CycleHasNone) {
    const Graphs g = graph(3, {{0, 1, {}}, {1, 2, {}}, {0, 2, {}}});
    EXPECT_EQ(split_bridges(SubProblem::whole(g.layout, g.endcuts), g.layout, g.endcuts).size(), 1u);
}

TEST(Bridges, StitchEdgesAreNotCut) {
    Graphs g = graph(4, {{0, 1, {}}, {2, 3, {}}});
    g.layout.vertices[2].feature = 1;
    g.layout.stitch_edges = {{1, 2, 1, Axis::horizontal, 150}};
    const auto pieces = split_bridges(SubProblem::whole(g.layout, g.endcuts), g.layout, g.endcuts);
    ASSERT_EQ(pieces.size(), 3u);
    EXPECT_EQ(pieces[1].vertices, (std::vector<int>{1, 2}));
    EXPECT_EQ(pieces[1].stitch_edges, (std::vector<int>{0}));
}

TEST(Bridges, MergeFlipsChildOnEqualColors) {
    // Two triangles joined by a bridge: each side alone prefers the same smallest colors.
    const Graphs g = graph(6, {{0, 1, {}}, {0, 2, {}}, {1, 2, {}}, {2, 3, {}}, {3, 4, {}}, {3, 5, {}}, {4, 5, {}}});
    Config cfg = quiet();
    const auto split = decompose_graphs(g, cfg);
    const auto whole = decompose_graphs(g, cfg, DecomposeOptions{.monolithic = true});
    EXPECT_EQ(split.stats.bridges_cut, 1);
    EXPECT_EQ(split.result.cost, whole.result.cost);
    EXPECT_EQ(split.result.cost, 2);
    EXPECT_NE(split.result.colors[2], split.result.colors[3]);
}

TEST(Preselect, AppliesCutsWithoutSolidNeighbours) {
    Graphs g = graph(3, {{0, 1, {}}, {1, 2, {}}}, {{0, 1}, {1, 2}});
    auto s = preselect_endcuts(SubProblem::whole(g.layout, g.endcuts), g.endcuts);
    EXPECT_EQ(s.preselected, (std::vector<int>{0, 1}));
    EXPECT_EQ(s.representative, (std::vector<int>{0, 0, 0}));
    g.endcuts.solid_edges = {{0, 1}};
    s = preselect_endcuts(SubProblem::whole(g.layout, g.endcuts), g.endcuts);
    EXPECT_TRUE(s.preselected.empty());
    EXPECT_EQ(s.representative, (std::vector<int>{0, 1, 2}));
}

TEST(Preselect, ContractingAFourCycleCanCostAConflict) {
    // Cycle 0-1-2-3-0 with a free cut on 0-3: contracting 0 and 3 leaves a triangle.
    const Graphs g = graph(4, {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {0, 3, {}}}, {{0, 3}});
    Config cfg = quiet();
    EXPECT_EQ(decompose_graphs(g, cfg).result.cost, 0);
    cfg.enable_preselect = true;
    const auto d = decompose_graphs(g, cfg);
    EXPECT_EQ(d.stats.preselected, 1);
    EXPECT_EQ(d.result.cost, 1);
}

TEST(Decompose, SpeedupsMatchMonolithic) {
    const Config cfg = Config::from_rules(10, 10);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto fs = leleec::test::random_layout(seed, 10, 220);
        const auto fast = decompose(fs, cfg);
        const auto slow = decompose(fs, cfg, DecomposeOptions{.monolithic = true});
        ASSERT_EQ(fast.result.cost, slow.result.cost) << "seed " << seed;
        const auto ev = evaluate_decomposition(fast.graphs.layout, fast.graphs.endcuts, fast.result.colors,
                                               fast.result.selected_cuts, cfg.alpha);
        ASSERT_TRUE(ev.violations.empty()) << "seed " << seed << ": " << ev.violations.front();
        ASSERT_EQ(ev.cost, fast.result.cost);
    }
}

TEST(Decompose, ThreadsDoNotChangeTheResult) {
    const auto fs = leleec::test::random_layout(11, 60, 1000);
    const Config cfg = Config::from_rules(10, 10);
    const auto one = decompose(fs, cfg);
    const auto many = decompose(fs, cfg, DecomposeOptions{.threads = 4});
    EXPECT_EQ(one.result, many.result);
    EXPECT_EQ(one.stats.subproblems, many.stats.subproblems);
}

TEST(Decompose, Deterministic) {
    const auto fs = leleec::test::random_layout(3, 40, 500);
    const Config cfg = Config::from_rules(10, 10);
    EXPECT_EQ(decompose(fs, cfg).result, decompose(fs, cfg).result);
}

TEST(Decompose, EmptyLayout) {
    const auto d = decompose({}, Config::from_rules(10, 10));
    EXPECT_TRUE(d.result.colors.empty());
    EXPECT_EQ(d.result.cost, 0);
    EXPECT_EQ(d.stats.components, 0);
    EXPECT_TRUE(d.stats.proven_optimal);
}

TEST(Decompose, FourCliqueUsesCuts) {
    const auto d = decompose(leleec::test::clique4(), quiet());
    EXPECT_EQ(d.result.cost, 0);
    EXPECT_GE(d.result.selected_cuts.size(), 2u);
    EXPECT_EQ(decompose_lelele(leleec::test::clique4(), quiet()).result.cost, 1);
}

TEST(Decompose, StitchResolvesOddCycle) {
    Config cfg = Config::from_rules(10, 10);
    const auto with = decompose(leleec::test::stitch_cycle(), cfg);
    EXPECT_EQ(with.result.cost, Rational(1, 10));
    EXPECT_EQ(with.result.stitches.size(), 1u);
    cfg.enable_stitch = false;
    EXPECT_EQ(decompose(leleec::test::stitch_cycle(), cfg).result.cost, 1);
}

TEST(Decompose, RejectsOverlap) {
    const std::vector<Feature> fs{feature(0, 0, 0, 10, 10), feature(1, 5, 5, 20, 20)};
    EXPECT_THROW(decompose(fs, quiet()), ValidationError);
}

TEST(Baseline, ComponentsAndCost) {
    const std::vector<Feature> fs{feature(0, 0, 0, 10, 10), feature(1, 30, 0, 40, 10), feature(2, 1000, 0, 1010, 10)};
    const auto b = decompose_lelele(fs, quiet());
    EXPECT_EQ(b.components, 2);
    EXPECT_EQ(b.result.cost, 0);
    EXPECT_NE(b.result.colors[0], b.result.colors[1]);
}
