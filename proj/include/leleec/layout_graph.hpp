#pragma once

#include "leleec/geometry.hpp"
#include "leleec/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace leleec {

/// Design rules and solver switches. Distances are integer nanometers.
struct Config {
    Coord w_min = 10;
    Coord s_min = 10;
    Coord dis_m = 50;      ///< minimum coloring distance
    Coord dis_c = 50;      ///< minimum end-cut distance
    Coord w_th = 50;       ///< end-cut width threshold
    Coord merge_gap = 10;  ///< cuts closer than this may merge into one
    Rational alpha{1, 10};
    bool enable_stitch = true;
    bool enable_preselect = false;
    bool enable_bridges = true;

    /// dis_m = 2 w_min + 3 s_min, w_th = dis_m, dis_c = dis_m, merge_gap = s_min.
    static Config from_rules(Coord w_min, Coord s_min);

    /// Throws ValidationError when a distance is non-positive or alpha < 0.
    void validate() const;

    bool operator==(const Config&) const = default;
};

struct Feature {
    int id = 0;
    Polygon shape;
};

/// One layout-graph vertex: a whole feature, or a piece of one after stitch splitting.
struct Segment {
    int id = 0;
    int feature = 0;
    Polygon shape;
};

struct ConflictEdge {
    int u = 0;  ///< u < v
    int v = 0;
    std::optional<int> candidate;
};

struct StitchEdge {
    int u = 0;  ///< u < v, both segments of `feature`
    int v = 0;
    int feature = 0;
    Axis axis = Axis::horizontal;  ///< spine direction; the cut line is perpendicular
    Coord at = 0;                  ///< coordinate of the cut line along the spine
};

struct LayoutGraph {
    std::vector<Segment> vertices;
    std::vector<ConflictEdge> conflict_edges;  ///< sorted by (u, v)
    std::vector<StitchEdge> stitch_edges;      ///< sorted by (u, v)
    int feature_count = 0;

    /// Index of the conflict edge joining u and v, if any.
    std::optional<int> find_conflict(int u, int v) const;
};

/// Throws ValidationError on malformed polygons or non-dense ids, and
/// OverlappingInput when two features overlap or touch.
void validate_features(std::span<const Feature> features);

/// Conflict edges between features closer than dis_m (strict). One vertex per feature.
LayoutGraph build_conflict_edges(std::span<const Feature> features, const Config& cfg);

/// O(n^2) reference used by tests and `verify`.
std::vector<std::pair<int, int>> brute_force_conflicts(std::span<const Feature> features, const Config& cfg);

/// Splits conflicting features at legal stitch positions and re-expresses
/// the conflict edges over the resulting segments.
LayoutGraph generate_stitch_candidates(std::span<const Feature> features, const LayoutGraph& graph,
                                       const Config& cfg);

/// Legal stitch coordinates along the spine of `feature` (before the
/// connectivity filter applied during splitting).
std::vector<Coord> stitch_positions(const Feature& feature, std::span<const Feature> neighbors,
                                    const Config& cfg, Axis* spine = nullptr);

struct EndCutCandidate;

/// Labels each conflict edge with the id of its end-cut candidate.
LayoutGraph annotate_end_cuts(LayoutGraph graph, std::span<const EndCutCandidate> candidates);

}  // namespace leleec
