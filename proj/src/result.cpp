#include "leleec/result.hpp"

#include <algorithm>

namespace leleec {

std::vector<TrimShape> merge_trim_shapes(const EndCutGraph& eg, std::span<const int> selected) {
    std::vector<int> sorted(selected.begin(), selected.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> taken(eg.nodes.size(), 0);
    std::vector<char> chosen(eg.nodes.size(), 0);
    for (int id : sorted) chosen[id] = 1;

    std::vector<TrimShape> out;
    for (int p : sorted) {
        if (taken[p]) continue;
        taken[p] = 1;
        TrimShape shape{eg.nodes[p].cut, {p}};
        for (auto [a, b] : eg.dash_edges) {
            const int q = a == p ? b : (b == p ? a : -1);
            if (q < 0 || !chosen[q] || taken[q]) continue;
            taken[q] = 1;
            shape.rect = bounding_union(shape.rect, eg.nodes[q].cut);
            shape.cuts.push_back(q);
            break;
        }
        out.push_back(std::move(shape));
    }
    return out;
}

Evaluation evaluate_decomposition(const LayoutGraph& lg, const EndCutGraph& eg, std::span<const int> colors,
                                  std::span<const int> selected, const Rational& alpha) {
    Evaluation ev;
    const std::size_t nv = lg.vertices.size();
    if (colors.size() != nv) {
        ev.violations.push_back("color count " + std::to_string(colors.size()) + " does not match vertex count " +
                                std::to_string(nv));
        return ev;
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (colors[v] != 0 && colors[v] != 1)
            ev.violations.push_back("vertex " + std::to_string(v) + " has no mask color");
    }
    std::vector<char> chosen(eg.nodes.size(), 0);
    for (int id : selected) {
        if (id < 0 || static_cast<std::size_t>(id) >= eg.nodes.size()) {
            ev.violations.push_back("selected cut " + std::to_string(id) + " is not a candidate");
            continue;
        }
        chosen[id] = 1;
    }
    if (!ev.violations.empty()) return ev;

    for (auto [p, q] : eg.solid_edges) {
        if (chosen[p] && chosen[q])
            ev.violations.push_back("trim: selected cuts " + std::to_string(p) + " and " + std::to_string(q) +
                                    " conflict on the trim mask");
    }
    for (std::size_t id = 0; id < eg.nodes.size(); ++id) {
        if (!chosen[id]) continue;
        const auto& c = eg.nodes[id];
        if (colors[c.vertex_a] != colors[c.vertex_b])
            ev.violations.push_back("cut mask: cut " + std::to_string(id) + " joins vertices " +
                                    std::to_string(c.vertex_a) + " and " + std::to_string(c.vertex_b) +
                                    " on different masks");
    }

    // Selected cuts at each vertex, keyed by the vertex on the other side.
    std::vector<std::vector<std::pair<int, int>>> cuts_at(nv);
    for (const auto& c : eg.nodes) {
        if (!chosen[c.id]) continue;
        cuts_at[c.vertex_a].emplace_back(c.vertex_b, c.id);
        cuts_at[c.vertex_b].emplace_back(c.vertex_a, c.id);
    }
    for (auto& list : cuts_at) std::sort(list.begin(), list.end());

    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e) {
        const auto& edge = lg.conflict_edges[e];
        if (colors[edge.u] != colors[edge.v]) continue;
        bool resolved = edge.candidate && chosen[*edge.candidate];
        for (auto [k, p] : cuts_at[edge.u]) {
            if (resolved) break;
            for (auto [k2, q] : cuts_at[edge.v]) {
                if (k2 == k && eg.is_dash(p, q)) {
                    resolved = true;
                    break;
                }
            }
        }
        if (!resolved) ev.conflicts.push_back(static_cast<int>(e));
    }
    for (std::size_t s = 0; s < lg.stitch_edges.size(); ++s) {
        const auto& edge = lg.stitch_edges[s];
        if (colors[edge.u] != colors[edge.v]) ev.stitches.push_back(static_cast<int>(s));
    }
    ev.cost = Rational(static_cast<std::int64_t>(ev.conflicts.size())) +
              alpha * static_cast<std::int64_t>(ev.stitches.size());
    return ev;
}

}  // namespace leleec
