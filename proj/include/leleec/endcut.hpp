#pragma once

#include "leleec/geometry.hpp"
#include "leleec/layout_graph.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace leleec {

enum class CutKind { edge_edge, corner_corner };

const char* to_string(CutKind kind);

/// A trim-mask rectangle that, when applied, lets two same-mask vertices
/// print as one shape that is then cut apart.
struct EndCutCandidate {
    int id = 0;
    int vertex_a = 0;  ///< vertex_a < vertex_b
    int vertex_b = 0;
    int feature_a = 0;
    int feature_b = 0;
    Rect cut;
    CutKind kind = CutKind::edge_edge;
};

struct CutShape {
    Rect rect;
    CutKind kind = CutKind::edge_edge;
    Coord printed_width = 0;  ///< extent across the bridging direction
    bool operator==(const CutShape&) const = default;
};

/// Straight cut across the gap between facing edges of `a` and `b`, clipped
/// to their projection. Absent when no rectangle pair faces, the projection
/// is narrower than w_th, or the cut would overlap any obstacle.
std::optional<CutShape> gen_edge_edge(const Polygon& a, const Polygon& b, const Config& cfg,
                                      const ObstacleSet& obstacles);

/// The four corner placements between a diagonal rectangle pair, before
/// filtering. Empty unless the pair is separated on both axes.
std::vector<CutShape> corner_placements(const Rect& a, const Rect& b, Coord w_th);

/// Minimal-area legal corner placement; ties go to the smallest (lo.x, lo.y).
std::optional<CutShape> gen_corner_corner(const Polygon& a, const Polygon& b, const Config& cfg,
                                          const ObstacleSet& obstacles);

/// One candidate per conflict edge that admits one, ids in (vertex_a, vertex_b) order.
std::vector<EndCutCandidate> generate_candidates(const LayoutGraph& graph, const Config& cfg);

enum class CutRelation { none, solid, dash };

struct EndCutGraph {
    std::vector<EndCutCandidate> nodes;
    std::vector<std::pair<int, int>> solid_edges;  ///< (p, q) with p < q, sorted
    std::vector<std::pair<int, int>> dash_edges;   ///< (p, q) with p < q, sorted

    bool is_solid(int p, int q) const;
    bool is_dash(int p, int q) const;
    /// Number of solid edges at each candidate.
    std::vector<int> solid_degree() const;
};

/// Dash when the cuts share exactly one feature, lie within merge_gap and
/// their merged bounding box clears every other feature; otherwise solid
/// when closer than dis_c. `obstacles` indexes the vertex shapes.
CutRelation classify_pair(const EndCutCandidate& p, const EndCutCandidate& q, const Config& cfg,
                          std::span<const Segment> vertices, const ObstacleSet& obstacles);

EndCutGraph build_endcut_graph(std::vector<EndCutCandidate> candidates, const Config& cfg,
                               std::span<const Segment> vertices);

}  // namespace leleec
