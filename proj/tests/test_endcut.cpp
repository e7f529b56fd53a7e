#include "leleec/decomposer.hpp"
#include "leleec/endcut.hpp"
#include "leleec/result.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace leleec;
using leleec::test::feature;

namespace {

Config with_threshold(Coord w_th) {
    Config cfg = Config::from_rules(10, 10);
    cfg.w_th = w_th;
    return cfg;
}

ObstacleSet obstacles_of(std::vector<Polygon> shapes) { return ObstacleSet(shapes, 50); }

}  // namespace

TEST(EdgeEdge, SpansGapOverProjection) {
    const Polygon a{{Rect::of(0, 0, 10, 40)}}, b{{Rect::of(16, 10, 26, 50)}};
    const auto cut = gen_edge_edge(a, b, with_threshold(20), obstacles_of({a, b}));
    ASSERT_TRUE(cut);
    EXPECT_EQ(cut->rect, Rect::of(10, 10, 16, 40));
    EXPECT_EQ(cut->printed_width, 30);
    EXPECT_EQ(cut->kind, CutKind::edge_edge);
}

TEST(EdgeEdge, NarrowProjectionIsForbidden) {
    const Polygon a{{Rect::of(0, 0, 10, 40)}}, b{{Rect::of(16, 25, 26, 50)}};
    EXPECT_FALSE(gen_edge_edge(a, b, with_threshold(20), obstacles_of({a, b})));
}

TEST(EdgeEdge, FeatureInTheGapForbids) {
    const Polygon a{{Rect::of(0, 0, 10, 40)}}, b{{Rect::of(40, 0, 50, 40)}}, mid{{Rect::of(20, 10, 30, 20)}};
    EXPECT_TRUE(gen_edge_edge(a, b, with_threshold(20), obstacles_of({a, b})));
    EXPECT_FALSE(gen_edge_edge(a, b, with_threshold(20), obstacles_of({a, b, mid})));
}

TEST(EdgeEdge, PicksSmallestAcrossRectPairs) {
    const Polygon a{{Rect::of(0, 40, 70, 100), Rect::of(0, 100, 90, 200)}}, b{{Rect::of(110, 40, 200, 200)}};
    const auto cut = gen_edge_edge(a, b, Config::from_rules(10, 10), obstacles_of({a, b}));
    ASSERT_TRUE(cut);
    EXPECT_EQ(cut->rect, Rect::of(90, 100, 110, 200));
}

TEST(CornerCorner, FourPlacements) {
    const auto shapes = corner_placements(Rect::of(0, 0, 10, 10), Rect::of(12, 12, 22, 22), 4);
    ASSERT_EQ(shapes.size(), 4u);
    EXPECT_EQ(shapes[0].rect, Rect::of(10, 10, 12, 14));
    EXPECT_EQ(shapes[1].rect, Rect::of(10, 8, 12, 12));
    EXPECT_EQ(shapes[2].rect, Rect::of(10, 10, 14, 12));
    EXPECT_EQ(shapes[3].rect, Rect::of(8, 10, 12, 12));
    for (const auto& s : shapes) EXPECT_EQ(s.printed_width, 4);
    EXPECT_TRUE(corner_placements(Rect::of(0, 0, 10, 10), Rect::of(20, 5, 30, 15), 4).empty());
}

TEST(CornerCorner, DiagonalGapAtThreshold) {
    const Polygon a{{Rect::of(0, 0, 10, 10)}}, b{{Rect::of(14, 14, 24, 24)}};
    const auto cut = gen_corner_corner(a, b, with_threshold(4), obstacles_of({a, b}));
    ASSERT_TRUE(cut);
    EXPECT_EQ(cut->rect, Rect::of(10, 10, 14, 14));
    EXPECT_EQ(cut->kind, CutKind::corner_corner);
}

TEST(CornerCorner, SymmetricTieTakesSmallestCorner) {
    const Polygon a{{Rect::of(0, 0, 10, 10)}}, b{{Rect::of(12, 12, 22, 22)}};
    const auto cut = gen_corner_corner(a, b, with_threshold(4), obstacles_of({a, b}));
    ASSERT_TRUE(cut);
    EXPECT_EQ(cut->rect, Rect::of(8, 10, 12, 12));
}

TEST(CornerCorner, AllPlacementsBlocked) {
    const Polygon a{{Rect::of(0, 0, 10, 10)}}, b{{Rect::of(14, 14, 24, 24)}};
    const Polygon blocker{{Rect::of(11, 11, 13, 13)}};
    EXPECT_FALSE(gen_corner_corner(a, b, with_threshold(4), obstacles_of({a, b, blocker})));
}

TEST(EndCutGraph, FarCutsAreUnrelated) {
    const std::vector<Feature> fs{feature(0, 0, 0, 10, 1000), feature(1, 20, 0, 30, 60), feature(2, 20, 940, 30, 1000)};
    const auto g = build_graphs(fs, Config::from_rules(10, 10));
    ASSERT_EQ(g.endcuts.nodes.size(), 2u);
    EXPECT_TRUE(g.endcuts.solid_edges.empty());
    EXPECT_TRUE(g.endcuts.dash_edges.empty());
}

TEST(EndCutGraph, MergeTriangle) {
    const auto fs = leleec::test::merge_triangle();
    Config cfg = leleec::test::merge_triangle_config();
    cfg.enable_stitch = false;
    const auto g = build_graphs(fs, cfg);
    ASSERT_EQ(g.endcuts.nodes.size(), 3u);
    EXPECT_EQ(g.endcuts.nodes[0].cut, Rect::of(90, 100, 110, 200));  // r1-r2
    EXPECT_EQ(g.endcuts.nodes[1].cut, Rect::of(0, 20, 70, 40));      // r1-r3
    EXPECT_EQ(g.endcuts.nodes[2].cut, Rect::of(110, 20, 200, 40));   // r2-r3
    EXPECT_EQ(g.endcuts.dash_edges, (std::vector<std::pair<int, int>>{{1, 2}}));
    EXPECT_EQ(g.endcuts.solid_edges, (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}));
    // One mask for all three with the merged cut clears every conflict.
    const Evaluation ev = evaluate_decomposition(g.layout, g.endcuts, std::vector<int>{0, 0, 0}, std::vector<int>{1, 2},
                                                 cfg.alpha);
    EXPECT_TRUE(ev.violations.empty());
    EXPECT_TRUE(ev.conflicts.empty());
}

TEST(EndCutGraph, CloseCutsWithoutSharedFeatureAreSolid) {
    // Two wire pairs side by side: cuts 20 apart share no feature.
    const std::vector<Feature> fs{feature(0, 0, 0, 100, 10), feature(1, 0, 30, 100, 40), feature(2, 0, 60, 100, 70),
                                  feature(3, 0, 90, 100, 100)};
    Config cfg = Config::from_rules(10, 10);
    cfg.enable_stitch = false;
    const auto g = build_graphs(fs, cfg);
    ASSERT_EQ(g.endcuts.nodes.size(), 3u);
    EXPECT_TRUE(g.endcuts.is_solid(0, 2));
    EXPECT_FALSE(g.endcuts.is_dash(0, 2));
    // Cuts 0-1 and 1-2 share feature 1 and touch it from both sides.
    EXPECT_TRUE(g.endcuts.is_dash(0, 1));
}

TEST(EndCutProperties, RandomLayouts) {
    const Config cfg = Config::from_rules(10, 10);
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const auto fs = leleec::test::random_layout(seed, 14, 260);
        const auto g = build_graphs(fs, cfg);
        std::vector<Polygon> shapes;
        for (const auto& v : g.layout.vertices) shapes.push_back(v.shape);
        const ObstacleSet obstacles(shapes, 50);
        for (const auto& c : g.endcuts.nodes) {
            for (const auto& v : g.layout.vertices) ASSERT_FALSE(rect_overlaps_polygon(c.cut, v.shape)) << "seed " << seed;
            ASSERT_LT(c.vertex_a, c.vertex_b);
            ASSERT_EQ(rect_polygon_distance(c.cut, g.layout.vertices[c.vertex_a].shape), 0);
            ASSERT_EQ(rect_polygon_distance(c.cut, g.layout.vertices[c.vertex_b].shape), 0);
            ASSERT_GE(std::max(c.cut.width(), c.cut.height()), cfg.w_th);
            const auto edge = g.layout.find_conflict(c.vertex_a, c.vertex_b);
            ASSERT_TRUE(edge);
            ASSERT_EQ(g.layout.conflict_edges[*edge].candidate, c.id);
            // Corner cuts appear only where no straight cut exists.
            if (c.kind == CutKind::corner_corner)
                ASSERT_FALSE(gen_edge_edge(g.layout.vertices[c.vertex_a].shape, g.layout.vertices[c.vertex_b].shape, cfg,
                                           obstacles));
        }
        const auto& n = g.endcuts.nodes;
        for (std::size_t p = 0; p < n.size(); ++p) {
            for (std::size_t q = p + 1; q < n.size(); ++q) {
                const auto rel = classify_pair(n[p], n[q], cfg, g.layout.vertices, obstacles);
                const bool solid = g.endcuts.is_solid(static_cast<int>(p), static_cast<int>(q));
                const bool dash = g.endcuts.is_dash(static_cast<int>(p), static_cast<int>(q));
                ASSERT_FALSE(solid && dash);
                ASSERT_EQ(solid, rel == CutRelation::solid);
                ASSERT_EQ(dash, rel == CutRelation::dash);
            }
        }
    }
}

TEST(EndCutProperties, TranslationInvariant) {
    const Config cfg = Config::from_rules(10, 10);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto fs = leleec::test::random_layout(seed, 12, 260);
        const auto g = build_graphs(fs, cfg);
        for (auto& f : fs) f.shape = f.shape.translated(1237, -4411);
        const auto h = build_graphs(fs, cfg);
        ASSERT_EQ(g.endcuts.nodes.size(), h.endcuts.nodes.size());
        for (std::size_t i = 0; i < g.endcuts.nodes.size(); ++i)
            ASSERT_EQ(g.endcuts.nodes[i].cut.translated(1237, -4411), h.endcuts.nodes[i].cut);
        ASSERT_EQ(g.endcuts.solid_edges, h.endcuts.solid_edges);
        ASSERT_EQ(g.endcuts.dash_edges, h.endcuts.dash_edges);
    }
}
