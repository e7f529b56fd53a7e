#pragma once

#include "leleec/endcut.hpp"
#include "leleec/ilp_model.hpp"
#include "leleec/layout_graph.hpp"
#include "leleec/result.hpp"
#include "leleec/solver.hpp"
#include "leleec/subproblem.hpp"

#include <optional>
#include <span>
#include <vector>

namespace leleec {

/// Layout graph with stitches and cut annotations, plus the end-cut graph.
struct Graphs {
    LayoutGraph layout;
    EndCutGraph endcuts;
};

/// Conflict edges, stitch splitting (when enabled), candidates, end-cut graph.
Graphs build_graphs(std::span<const Feature> features, const Config& cfg);

/// Connected components of CE and SE, with candidates related by a solid or
/// dash edge pulling their components together. Ordered by minimum vertex.
std::vector<SubProblem> split_components(const LayoutGraph& lg, const EndCutGraph& eg);

/// Applies every candidate in `sub` that has no solid edge and contracts its
/// endpoints. Representatives are the smallest vertex of each class.
SubProblem preselect_endcuts(const SubProblem& sub, const EndCutGraph& eg);

/// Cuts the bridges of the contracted graph that carry no candidate and have
/// no stitch or end-cut relation across them. Pieces come back in BFS order
/// from the piece holding the smallest vertex; each non-root piece lists the
/// bridge to its parent in `boundary`.
std::vector<SubProblem> split_bridges(const SubProblem& sub, const LayoutGraph& lg, const EndCutGraph& eg);

struct DecomposeOptions {
    std::optional<Seconds> time_limit;
    /// One model over the whole layout with no speedups.
    bool monolithic = false;
    int threads = 1;
};

struct DecomposeStats {
    int components = 0;
    int subproblems = 0;
    int bridges_cut = 0;
    int preselected = 0;
    int max_variables = 0;
    std::uint64_t nodes_explored = 0;
    bool proven_optimal = true;
    Seconds elapsed{0};
};

struct Decomposition {
    Graphs graphs;
    DecompResult result;
    DecomposeStats stats;
};

/// Full pipeline. The result is re-evaluated from colors and cuts; throws
/// CostMismatch if that disagrees with the solved cost.
Decomposition decompose(std::span<const Feature> features, const Config& cfg,
                        const DecomposeOptions& options = {});

/// Solves prebuilt graphs.
Decomposition decompose_graphs(Graphs graphs, const Config& cfg, const DecomposeOptions& options = {});

struct BaselineDecomposition {
    LayoutGraph layout;
    BaselineResult result;
    int components = 0;
    bool proven_optimal = true;
};

/// Three-mask coloring of the conflict graph, one model per component.
BaselineDecomposition decompose_lelele(std::span<const Feature> features, const Config& cfg,
                                       std::optional<Seconds> time_limit = std::nullopt);

}  // namespace leleec
