#include "leleec/layout_graph.hpp"

#include "leleec/endcut.hpp"
#include "leleec/error.hpp"

#include <algorithm>
#include <map>

namespace leleec {

Config Config::from_rules(Coord w_min, Coord s_min) {
    Config cfg;
    cfg.w_min = w_min;
    cfg.s_min = s_min;
    cfg.dis_m = 2 * w_min + 3 * s_min;
    cfg.w_th = cfg.dis_m;
    cfg.dis_c = cfg.dis_m;
    cfg.merge_gap = s_min;
    return cfg;
}

void Config::validate() const {
    const std::pair<const char*, Coord> fields[] = {{"w_min", w_min}, {"s_min", s_min}, {"dis_m", dis_m},
                                                    {"dis_c", dis_c}, {"w_th", w_th},   {"merge_gap", merge_gap}};
    for (const auto& [name, value] : fields) {
        if (value <= 0) throw ValidationError(std::string(name) + " must be positive");
        if (value >= kMaxCoord) throw ValidationError(std::string(name) + " is out of range");
    }
    if (alpha < 0) throw ValidationError("alpha must be non-negative");
}

std::optional<int> LayoutGraph::find_conflict(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(conflict_edges.begin(), conflict_edges.end(), std::pair{u, v},
                               [](const ConflictEdge& e, const std::pair<int, int>& key) {
                                   return std::pair{e.u, e.v} < key;
                               });
    if (it != conflict_edges.end() && it->u == u && it->v == v)
        return static_cast<int>(it - conflict_edges.begin());
    return std::nullopt;
}

void validate_features(std::span<const Feature> features) {
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].id != static_cast<int>(i))
            throw ValidationError("feature ids must be dense from 0 in order; found id " +
                                  std::to_string(features[i].id) + " at position " + std::to_string(i));
        if (auto defect = polygon_defect(features[i].shape); !defect.empty())
            throw ValidationError("feature " + std::to_string(i) + ": " + defect);
    }
}

namespace {

Coord index_cell(std::span<const Feature> features, Coord reach) {
    // Cells at least as large as the search radius and the typical feature.
    Coord typical = reach;
    if (!features.empty()) {
        Coord total = 0;
        for (const auto& f : features) {
            const Rect b = f.shape.bbox();
            total += std::max(b.width(), b.height());
        }
        typical = std::max(typical, total / static_cast<Coord>(features.size()));
    }
    return std::max<Coord>(typical, 1);
}

std::vector<std::pair<int, int>> near_pairs(std::span<const Feature> features, Coord reach) {
    GridIndex index(index_cell(features, reach));
    for (const auto& f : features) {
        for (const auto& r : f.shape.rects) index.insert(f.id, r);
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& f : features) {
        std::vector<int> near;
        for (const auto& r : f.shape.rects) {
            auto hits = index.query(r.expanded(reach));
            near.insert(near.end(), hits.begin(), hits.end());
        }
        std::sort(near.begin(), near.end());
        near.erase(std::unique(near.begin(), near.end()), near.end());
        for (int other : near) {
            if (other > f.id) pairs.emplace_back(f.id, other);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

LayoutGraph build_conflict_edges(std::span<const Feature> features, const Config& cfg) {
    validate_features(features);
    LayoutGraph graph;
    graph.feature_count = static_cast<int>(features.size());
    for (const auto& f : features) graph.vertices.push_back({f.id, f.id, f.shape});

    const Dist2 limit = cfg.dis_m * cfg.dis_m;
    for (auto [a, b] : near_pairs(features, cfg.dis_m)) {
        const Dist2 d = polygon_distance(features[a].shape, features[b].shape);
        if (d == 0) throw OverlappingInput(a, b);
        if (d < limit) graph.conflict_edges.push_back({a, b, std::nullopt});
    }
    return graph;
}

std::vector<std::pair<int, int>> brute_force_conflicts(std::span<const Feature> features, const Config& cfg) {
    std::vector<std::pair<int, int>> edges;
    const Dist2 limit = cfg.dis_m * cfg.dis_m;
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            const Dist2 d = polygon_distance(features[i].shape, features[j].shape);
            if (d > 0 && d < limit) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return edges;
}

std::vector<Coord> stitch_positions(const Feature& feature, std::span<const Feature> neighbors,
                                    const Config& cfg, Axis* spine_out) {
    const Rect box = feature.shape.bbox();
    const Axis spine = box.width() >= box.height() ? Axis::horizontal : Axis::vertical;
    if (spine_out) *spine_out = spine;
    const Interval range = box.extent(spine);
    const Dist2 limit = cfg.dis_m * cfg.dis_m;

    std::vector<Interval> covered;
    for (const auto& n : neighbors) {
        for (const auto& r : n.shape.rects) {
            if (rect_polygon_distance(r, feature.shape) >= limit) continue;
            const Interval e = r.extent(spine);
            covered.push_back({e.lo - cfg.dis_m, e.hi + cfg.dis_m});
        }
    }
    std::sort(covered.begin(), covered.end());

    std::vector<Coord> positions;
    auto consider = [&](Coord a, Coord b) {
        a = std::max(a, range.lo);
        b = std::min(b, range.hi);
        if (b - a < cfg.w_min) return;
        const Coord sum = a + b;
        const Coord mid = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
        if (mid > range.lo && mid < range.hi) positions.push_back(mid);
    };
    Coord cursor = range.lo;
    for (const auto& c : covered) {
        if (c.lo > cursor) consider(cursor, c.lo);
        cursor = std::max(cursor, c.hi);
    }
    if (cursor < range.hi) consider(cursor, range.hi);
    return positions;
}

namespace {

std::vector<Polygon> split_at(const Polygon& shape, Axis spine, const std::vector<Coord>& cuts) {
    std::vector<Polygon> pieces(cuts.size() + 1);
    for (const auto& r : shape.rects) {
        const Interval e = r.extent(spine);
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            const Coord lo = k == 0 ? e.lo : std::max(e.lo, cuts[k - 1]);
            const Coord hi = k == cuts.size() ? e.hi : std::min(e.hi, cuts[k]);
            if (lo >= hi) continue;
            Rect piece = r;
            if (spine == Axis::horizontal) {
                piece.lo.x = lo;
                piece.hi.x = hi;
            } else {
                piece.lo.y = lo;
                piece.hi.y = hi;
            }
            pieces[k].rects.push_back(piece);
        }
    }
    return pieces;
}

/// Drops stitches until every piece is non-empty and edge-connected.
std::vector<Polygon> split_connected(const Polygon& shape, Axis spine, std::vector<Coord>& cuts) {
    while (true) {
        auto pieces = split_at(shape, spine, cuts);
        std::optional<std::size_t> bad;
        for (std::size_t k = 0; k < pieces.size() && !bad; ++k) {
            if (pieces[k].rects.empty() || !polygon_defect(pieces[k]).empty()) bad = k;
        }
        if (!bad) return pieces;
        // Remove the cut bounding the bad piece on its right, or its left at the end.
        const std::size_t drop = *bad < cuts.size() ? *bad : *bad - 1;
        cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(drop));
    }
}

}  // namespace

LayoutGraph generate_stitch_candidates(std::span<const Feature> features, const LayoutGraph& graph,
                                       const Config& cfg) {
    const int n = static_cast<int>(features.size());
    std::vector<std::vector<int>> adjacency(n);
    for (const auto& e : graph.conflict_edges) {
        adjacency[graph.vertices[e.u].feature].push_back(graph.vertices[e.v].feature);
        adjacency[graph.vertices[e.v].feature].push_back(graph.vertices[e.u].feature);
    }

    LayoutGraph out;
    out.feature_count = n;
    std::vector<std::vector<int>> segments_of(n);
    for (const auto& f : features) {
        std::vector<Polygon> pieces{f.shape};
        Axis spine = Axis::horizontal;
        std::vector<Coord> cuts;
        if (!adjacency[f.id].empty()) {
            std::vector<Feature> neighbors;
            for (int g : adjacency[f.id]) neighbors.push_back(features[g]);
            cuts = stitch_positions(f, neighbors, cfg, &spine);
            if (!cuts.empty()) pieces = split_connected(f.shape, spine, cuts);
        }
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            const int id = static_cast<int>(out.vertices.size());
            out.vertices.push_back({id, f.id, std::move(pieces[k])});
            segments_of[f.id].push_back(id);
            if (k > 0) out.stitch_edges.push_back({id - 1, id, f.id, spine, cuts[k - 1]});
        }
    }

    const Dist2 limit = cfg.dis_m * cfg.dis_m;
    for (const auto& e : graph.conflict_edges) {
        const int fa = graph.vertices[e.u].feature;
        const int fb = graph.vertices[e.v].feature;
        for (int sa : segments_of[fa]) {
            for (int sb : segments_of[fb]) {
                const Dist2 d = polygon_distance(out.vertices[sa].shape, out.vertices[sb].shape);
                if (d > 0 && d < limit) out.conflict_edges.push_back({std::min(sa, sb), std::max(sa, sb), std::nullopt});
            }
        }
    }
    std::sort(out.conflict_edges.begin(), out.conflict_edges.end(),
              [](const ConflictEdge& a, const ConflictEdge& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
    return out;
}

LayoutGraph annotate_end_cuts(LayoutGraph graph, std::span<const EndCutCandidate> candidates) {
    for (auto& e : graph.conflict_edges) e.candidate.reset();
    for (const auto& c : candidates) {
        const auto edge = graph.find_conflict(c.vertex_a, c.vertex_b);
        if (!edge)
            throw InconsistentAnnotation("candidate " + std::to_string(c.id) + " joins vertices " +
                                         std::to_string(c.vertex_a) + " and " + std::to_string(c.vertex_b) +
                                         " which share no conflict edge");
        auto& slot = graph.conflict_edges[*edge].candidate;
        if (slot)
            throw DuplicateCandidate("conflict edge (" + std::to_string(c.vertex_a) + "," +
                                     std::to_string(c.vertex_b) + ") has candidates " + std::to_string(*slot) +
                                     " and " + std::to_string(c.id));
        slot = c.id;
    }
    return graph;
}

}  // namespace leleec
