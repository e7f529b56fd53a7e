#pragma once

#include "leleec/endcut.hpp"
#include "leleec/layout_graph.hpp"
#include "leleec/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace leleec {

/// A rectangle on the trim mask: one cut, or the union rectangle of a
/// dash-merged pair.
struct TrimShape {
    Rect rect;
    std::vector<int> cuts;
    bool operator==(const TrimShape&) const = default;
};

struct DecompResult {
    std::vector<int> colors;         ///< per vertex: 0 (mask 1) or 1 (mask 2)
    std::vector<int> selected_cuts;  ///< candidate ids, ascending
    std::vector<int> conflicts;      ///< conflict edge ids, ascending
    std::vector<int> stitches;       ///< stitch edge ids, ascending
    Rational cost;
    std::vector<TrimShape> trim;

    bool operator==(const DecompResult&) const = default;
};

/// Pairs dash-connected selected cuts (each cut joins at most one pair,
/// smallest partner first) and emits one trim rectangle per pair or single cut.
std::vector<TrimShape> merge_trim_shapes(const EndCutGraph& eg, std::span<const int> selected);

struct Evaluation {
    std::vector<int> conflicts;
    std::vector<int> stitches;
    Rational cost;
    std::vector<std::string> violations;  ///< named constraint failures
};

/// Recomputes conflicts, stitches and cost from colors and selected cuts,
/// and lists every violated rule. A same-color conflict edge is resolved
/// when its own cut is selected, or when two selected dash-connected cuts
/// join each endpoint to a common neighbor.
Evaluation evaluate_decomposition(const LayoutGraph& lg, const EndCutGraph& eg, std::span<const int> colors,
                                  std::span<const int> selected, const Rational& alpha);

}  // namespace leleec
