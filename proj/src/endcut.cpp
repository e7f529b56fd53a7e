#include "leleec/endcut.hpp"

#include <algorithm>
#include <tuple>

namespace leleec {

const char* to_string(CutKind kind) {
    return kind == CutKind::edge_edge ? "edge_edge" : "corner_corner";
}

namespace {

bool better(const CutShape& a, const CutShape& b) {
    return std::tuple{a.rect.area(), a.rect.lo, a.rect.hi} < std::tuple{b.rect.area(), b.rect.lo, b.rect.hi};
}

/// Gap between two disjoint extents, or nullopt when they overlap or touch.
std::optional<Interval> gap_between(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return Interval{a.hi, b.lo};
    if (b.hi < a.lo) return Interval{b.hi, a.lo};
    return std::nullopt;
}

}  // namespace

std::optional<CutShape> gen_edge_edge(const Polygon& a, const Polygon& b, const Config& cfg,
                                      const ObstacleSet& obstacles) {
    const Dist2 limit = cfg.dis_m * cfg.dis_m;
    std::optional<CutShape> best;
    for (const auto& ra : a.rects) {
        for (const auto& rb : b.rects) {
            if (rect_distance(ra, rb) >= limit) continue;
            for (Axis across : {Axis::horizontal, Axis::vertical}) {
                // `across` is the gap direction; the cut spans the projection on the other axis.
                const auto gap = gap_between(ra.extent(across), rb.extent(across));
                const auto proj = projection_interval(ra, rb, other(across));
                if (!gap || !proj) continue;
                CutShape shape;
                shape.kind = CutKind::edge_edge;
                shape.printed_width = proj->length();
                shape.rect = across == Axis::horizontal ? Rect::of(gap->lo, proj->lo, gap->hi, proj->hi)
                                                        : Rect::of(proj->lo, gap->lo, proj->hi, gap->hi);
                if (shape.printed_width < cfg.w_th) continue;
                if (obstacles.overlaps_any(shape.rect)) continue;
                if (!best || better(shape, *best)) best = shape;
            }
        }
    }
    return best;
}

std::vector<CutShape> corner_placements(const Rect& a, const Rect& b, Coord w_th) {
    const auto gx = gap_between(a.extent(Axis::horizontal), b.extent(Axis::horizontal));
    const auto gy = gap_between(a.extent(Axis::vertical), b.extent(Axis::vertical));
    if (!gx || !gy) return {};
    const Coord tall = std::max(gy->length(), w_th);
    const Coord wide = std::max(gx->length(), w_th);
    return {
        {Rect::of(gx->lo, gy->lo, gx->hi, gy->lo + tall), CutKind::corner_corner, tall},
        {Rect::of(gx->lo, gy->hi - tall, gx->hi, gy->hi), CutKind::corner_corner, tall},
        {Rect::of(gx->lo, gy->lo, gx->lo + wide, gy->hi), CutKind::corner_corner, wide},
        {Rect::of(gx->hi - wide, gy->lo, gx->hi, gy->hi), CutKind::corner_corner, wide},
    };
}

std::optional<CutShape> gen_corner_corner(const Polygon& a, const Polygon& b, const Config& cfg,
                                          const ObstacleSet& obstacles) {
    const Dist2 limit = cfg.dis_m * cfg.dis_m;
    std::optional<CutShape> best;
    for (const auto& ra : a.rects) {
        for (const auto& rb : b.rects) {
            if (rect_distance(ra, rb) >= limit) continue;
            for (const auto& shape : corner_placements(ra, rb, cfg.w_th)) {
                if (shape.printed_width < cfg.w_th) continue;
                if (obstacles.overlaps_any(shape.rect)) continue;
                if (!best || better(shape, *best)) best = shape;
            }
        }
    }
    return best;
}

std::vector<EndCutCandidate> generate_candidates(const LayoutGraph& graph, const Config& cfg) {
    std::vector<Polygon> shapes;
    shapes.reserve(graph.vertices.size());
    for (const auto& v : graph.vertices) shapes.push_back(v.shape);
    const ObstacleSet obstacles(shapes, std::max(cfg.dis_m, cfg.w_th));

    std::vector<EndCutCandidate> out;
    for (const auto& e : graph.conflict_edges) {
        const auto& a = graph.vertices[e.u];
        const auto& b = graph.vertices[e.v];
        auto shape = gen_edge_edge(a.shape, b.shape, cfg, obstacles);
        if (!shape) shape = gen_corner_corner(a.shape, b.shape, cfg, obstacles);
        if (!shape) continue;
        EndCutCandidate c;
        c.id = static_cast<int>(out.size());
        c.vertex_a = e.u;
        c.vertex_b = e.v;
        c.feature_a = a.feature;
        c.feature_b = b.feature;
        c.cut = shape->rect;
        c.kind = shape->kind;
        out.push_back(c);
    }
    return out;
}

bool EndCutGraph::is_solid(int p, int q) const {
    if (p > q) std::swap(p, q);
    return std::binary_search(solid_edges.begin(), solid_edges.end(), std::pair{p, q});
}

bool EndCutGraph::is_dash(int p, int q) const {
    if (p > q) std::swap(p, q);
    return std::binary_search(dash_edges.begin(), dash_edges.end(), std::pair{p, q});
}

std::vector<int> EndCutGraph::solid_degree() const {
    std::vector<int> degree(nodes.size(), 0);
    for (auto [p, q] : solid_edges) {
        ++degree[p];
        ++degree[q];
    }
    return degree;
}

CutRelation classify_pair(const EndCutCandidate& p, const EndCutCandidate& q, const Config& cfg,
                          std::span<const Segment> vertices, const ObstacleSet& obstacles) {
    const Dist2 d = rect_distance(p.cut, q.cut);
    int common = 0;
    for (int fp : {p.feature_a, p.feature_b}) {
        for (int fq : {q.feature_a, q.feature_b}) common += fp == fq;
    }
    if (common == 1 && d <= cfg.merge_gap * cfg.merge_gap) {
        const Rect merged = bounding_union(p.cut, q.cut);
        bool clear = true;
        for (int owner : obstacles.overlapping(merged)) {
            const int f = vertices[owner].feature;
            if (f != p.feature_a && f != p.feature_b && f != q.feature_a && f != q.feature_b) {
                clear = false;
                break;
            }
        }
        if (clear) return CutRelation::dash;
    }
    if (d < cfg.dis_c * cfg.dis_c) return CutRelation::solid;
    return CutRelation::none;
}

EndCutGraph build_endcut_graph(std::vector<EndCutCandidate> candidates, const Config& cfg,
                               std::span<const Segment> vertices) {
    std::vector<Polygon> shapes;
    shapes.reserve(vertices.size());
    for (const auto& v : vertices) shapes.push_back(v.shape);
    const ObstacleSet obstacles(shapes, std::max(cfg.dis_m, cfg.w_th));

    const Coord reach = std::max(cfg.dis_c, cfg.merge_gap);
    GridIndex index(std::max(reach, cfg.dis_m));
    for (const auto& c : candidates) index.insert(c.id, c.cut);

    EndCutGraph graph;
    for (const auto& p : candidates) {
        for (int qid : index.query(p.cut.expanded(reach))) {
            if (qid <= p.id) continue;
            switch (classify_pair(p, candidates[qid], cfg, vertices, obstacles)) {
                case CutRelation::solid: graph.solid_edges.emplace_back(p.id, qid); break;
                case CutRelation::dash: graph.dash_edges.emplace_back(p.id, qid); break;
                case CutRelation::none: break;
            }
        }
    }
    std::sort(graph.solid_edges.begin(), graph.solid_edges.end());
    std::sort(graph.dash_edges.begin(), graph.dash_edges.end());
    graph.nodes = std::move(candidates);
    return graph;
}

}  // namespace leleec
