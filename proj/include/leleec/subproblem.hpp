#pragma once

#include "leleec/endcut.hpp"
#include "leleec/layout_graph.hpp"

#include <vector>

namespace leleec {

/// A bridge edge removed between two pieces of one component.
struct Bridge {
    int edge = 0;  ///< conflict edge id
    int u = 0;     ///< endpoint inside the parent piece
    int v = 0;     ///< endpoint inside the child piece
};

/// The slice of the layout and end-cut graphs handed to one ILP.
struct SubProblem {
    std::vector<int> vertices;        ///< ascending vertex ids
    std::vector<int> representative;  ///< parallel to `vertices`: class after contraction
    std::vector<int> conflict_edges;  ///< ascending conflict edge ids
    std::vector<int> stitch_edges;    ///< ascending stitch edge ids
    std::vector<int> candidates;      ///< ascending candidate ids
    std::vector<int> preselected;     ///< candidates applied before solving
    std::vector<Bridge> boundary;     ///< bridges cut away from this piece

    /// Every vertex, edge and candidate, with no contraction.
    static SubProblem whole(const LayoutGraph& lg, const EndCutGraph& eg);

    bool contains(int vertex) const;
    int rep_of(int vertex) const;
    int min_vertex() const { return vertices.empty() ? -1 : vertices.front(); }
};

}  // namespace leleec
