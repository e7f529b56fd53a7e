#pragma once

#include "leleec/decomposer.hpp"
#include "leleec/geometry.hpp"
#include "leleec/layout_graph.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace leleec::test {

inline Feature feature(int id, std::vector<Rect> rects) { return {id, Polygon{std::move(rects)}}; }
inline Feature feature(int id, Coord x0, Coord y0, Coord x1, Coord y1) {
    return feature(id, {Rect::of(x0, y0, x1, y1)});
}

/// Four mutually conflicting features; three masks leave one conflict.
inline std::vector<Feature> clique4() {
    return {feature(0, 0, 70, 100, 170), feature(1, 0, 0, 100, 50), feature(2, 110, 0, 210, 50),
            feature(3, 110, 70, 210, 170)};
}

/// Odd cycle A-B-C-A where only a stitch on the long wire A avoids a conflict.
inline std::vector<Feature> stitch_cycle() {
    return {feature(0, 0, 0, 400, 10), feature(1, 0, 30, 10, 130),
            feature(2, {Rect::of(390, 30, 400, 130), Rect::of(30, 130, 400, 140)})};
}

/// Geometric triangle whose cuts 1-3 and 2-3 merge around feature 3.
inline std::vector<Feature> merge_triangle() {
    return {feature(0, {Rect::of(0, 40, 70, 100), Rect::of(0, 100, 90, 200)}), feature(1, 110, 40, 200, 200),
            feature(2, 0, 0, 200, 20)};
}
inline Config merge_triangle_config() {
    Config cfg = Config::from_rules(10, 10);
    cfg.dis_c = 70;
    cfg.merge_gap = 40;
    return cfg;
}

/// Graph-level triangle r1 r2 r3 (vertices 0, 1, 2) with cuts on all three
/// sides, the 1-3 and 2-3 cuts mergeable and the 1-2 cut excluding both.
/// Vertex 3 pins r1 and r3 together, vertex 4 pins r2 and r3, so splitting
/// the triangle's colors always costs one conflict.
inline Graphs pinned_merge_triangle() {
    Graphs g;
    for (int v = 0; v < 5; ++v) {
        const Coord x = 100 * v;
        g.layout.vertices.push_back({v, v, Polygon{{Rect::of(x, 0, x + 10, 10)}}});
    }
    g.layout.feature_count = 5;
    g.layout.conflict_edges = {{0, 1, 0}, {0, 2, 1}, {0, 3, {}}, {1, 2, 2}, {1, 4, {}}, {2, 3, {}}, {2, 4, {}}};
    g.endcuts.nodes = {{0, 0, 1, 0, 1, Rect::of(0, 0, 1, 1), CutKind::edge_edge},
                       {1, 0, 2, 0, 2, Rect::of(0, 0, 1, 1), CutKind::edge_edge},
                       {2, 1, 2, 1, 2, Rect::of(0, 0, 1, 1), CutKind::edge_edge}};
    g.endcuts.solid_edges = {{0, 1}, {0, 2}};
    g.endcuts.dash_edges = {{1, 2}};
    return g;
}

/// Uniform in [lo, hi].
inline Coord uniform(std::mt19937_64& rng, Coord lo, Coord hi) {
    return lo + static_cast<Coord>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random non-touching rectangles (occasionally L-shapes) on a 10 nm grid.
inline std::vector<Feature> random_layout(std::uint64_t seed, int count, Coord field = 260) {
    std::mt19937_64 rng(seed);
    std::vector<Feature> out;
    for (int attempt = 0; attempt < 400 && static_cast<int>(out.size()) < count; ++attempt) {
        const Coord x = uniform(rng, 0, field / 10) * 10, y = uniform(rng, 0, field / 10) * 10;
        const bool wide = rng() % 2 == 0;
        const Coord len = uniform(rng, 2, 12) * 10, thick = uniform(rng, 1, 3) * 10;
        std::vector<Rect> rects{wide ? Rect::of(x, y, x + len, y + thick) : Rect::of(x, y, x + thick, y + len)};
        if (rng() % 5 == 0) {
            const Rect& r = rects.front();
            const Coord leg = uniform(rng, 2, 8) * 10;
            rects.push_back(wide ? Rect::of(r.hi.x - thick, r.hi.y, r.hi.x, r.hi.y + leg)
                                 : Rect::of(r.hi.x, r.hi.y - thick, r.hi.x + leg, r.hi.y));
        }
        Polygon p{rects};
        bool clear = true;
        for (const auto& f : out) clear = clear && polygon_distance(f.shape, p) > 0;
        if (clear) out.push_back({static_cast<int>(out.size()), std::move(p)});
    }
    return out;
}

}  // namespace leleec::test
