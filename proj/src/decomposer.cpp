#include "leleec/decomposer.hpp"

#include "leleec/error.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace leleec {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    /// Keeps the smaller root so every class is named by its minimum.
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

struct LocalEdge {
    int a;
    int b;
    bool cuttable;
    int conflict_edge;
};

/// Bridges of an undirected multigraph (parallel edges are never bridges).
std::vector<char> find_bridges(int n, const std::vector<LocalEdge>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].a].emplace_back(edges[e].b, static_cast<int>(e));
        adj[edges[e].b].emplace_back(edges[e].a, static_cast<int>(e));
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> bridge(edges.size(), 0);
    int timer = 0;
    struct Frame {
        int node;
        int via;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.node].size()) {
                const auto [to, e] = adj[f.node][f.next++];
                if (e == f.via) continue;
                if (disc[to] >= 0) {
                    low[f.node] = std::min(low[f.node], disc[to]);
                } else {
                    disc[to] = low[to] = timer++;
                    stack.push_back({to, e, 0});
                }
                continue;
            }
            const Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                const int parent = stack.back().node;
                low[parent] = std::min(low[parent], low[done.node]);
                if (low[done.node] > disc[parent]) bridge[done.via] = 1;
            }
        }
    }
    return bridge;
}

template <class T>
bool sorted_contains(const std::vector<T>& v, const T& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

Graphs build_graphs(std::span<const Feature> features, const Config& cfg) {
    cfg.validate();
    LayoutGraph lg = build_conflict_edges(features, cfg);
    if (cfg.enable_stitch) lg = generate_stitch_candidates(features, lg, cfg);
    auto candidates = generate_candidates(lg, cfg);
    lg = annotate_end_cuts(std::move(lg), candidates);
    EndCutGraph eg = build_endcut_graph(std::move(candidates), cfg, lg.vertices);
    return {std::move(lg), std::move(eg)};
}

std::vector<SubProblem> split_components(const LayoutGraph& lg, const EndCutGraph& eg) {
    const std::size_t nv = lg.vertices.size();
    DisjointSets sets(nv);
    for (const auto& e : lg.conflict_edges) sets.unite(e.u, e.v);
    for (const auto& e : lg.stitch_edges) sets.unite(e.u, e.v);
    for (const auto& c : eg.nodes) sets.unite(c.vertex_a, c.vertex_b);
    for (const auto* list : {&eg.solid_edges, &eg.dash_edges}) {
        for (auto [p, q] : *list) sets.unite(eg.nodes[p].vertex_a, eg.nodes[q].vertex_a);
    }
    std::map<int, std::size_t> index;
    std::vector<SubProblem> out;
    std::vector<std::size_t> comp_of(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const int root = sets.find(static_cast<int>(v));
        auto [it, fresh] = index.emplace(root, out.size());
        if (fresh) out.emplace_back();
        comp_of[v] = it->second;
        out[it->second].vertices.push_back(static_cast<int>(v));
        out[it->second].representative.push_back(static_cast<int>(v));
    }
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e)
        out[comp_of[lg.conflict_edges[e].u]].conflict_edges.push_back(static_cast<int>(e));
    for (std::size_t e = 0; e < lg.stitch_edges.size(); ++e)
        out[comp_of[lg.stitch_edges[e].u]].stitch_edges.push_back(static_cast<int>(e));
    for (const auto& c : eg.nodes) out[comp_of[c.vertex_a]].candidates.push_back(c.id);
    return out;
}

SubProblem preselect_endcuts(const SubProblem& sub, const EndCutGraph& eg) {
    SubProblem out = sub;
    const auto degree = eg.solid_degree();
    std::map<int, int> local;
    for (std::size_t i = 0; i < sub.vertices.size(); ++i) local[sub.vertices[i]] = static_cast<int>(i);
    DisjointSets sets(sub.vertices.size());
    for (std::size_t i = 0; i < sub.vertices.size(); ++i) sets.unite(static_cast<int>(i), local[sub.representative[i]]);
    for (int id : sub.candidates) {
        if (degree[id] != 0 || sorted_contains(sub.preselected, id)) continue;
        out.preselected.push_back(id);
        sets.unite(local[eg.nodes[id].vertex_a], local[eg.nodes[id].vertex_b]);
    }
    std::sort(out.preselected.begin(), out.preselected.end());
    for (std::size_t i = 0; i < sub.vertices.size(); ++i)
        out.representative[i] = sub.vertices[static_cast<std::size_t>(sets.find(static_cast<int>(i)))];
    return out;
}

std::vector<SubProblem> split_bridges(const SubProblem& sub, const LayoutGraph& lg, const EndCutGraph& eg) {
    std::vector<int> reps(sub.representative);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    auto node_of = [&](int vertex) {
        return static_cast<int>(std::lower_bound(reps.begin(), reps.end(), sub.rep_of(vertex)) - reps.begin());
    };

    std::vector<LocalEdge> edges;
    for (int e : sub.conflict_edges) {
        const auto& edge = lg.conflict_edges[e];
        const int a = node_of(edge.u), b = node_of(edge.v);
        if (a == b) continue;
        const bool has_cut = edge.candidate && sorted_contains(sub.candidates, *edge.candidate);
        edges.push_back({a, b, !has_cut, e});
    }
    for (int e : sub.stitch_edges) {
        const int a = node_of(lg.stitch_edges[e].u), b = node_of(lg.stitch_edges[e].v);
        if (a != b) edges.push_back({a, b, false, -1});
    }
    for (const auto* list : {&eg.solid_edges, &eg.dash_edges}) {
        for (auto [p, q] : *list) {
            if (!sorted_contains(sub.candidates, p) || !sorted_contains(sub.candidates, q)) continue;
            const int a = node_of(eg.nodes[p].vertex_a), b = node_of(eg.nodes[q].vertex_a);
            if (a != b) edges.push_back({a, b, false, -1});
        }
    }

    const int n = static_cast<int>(reps.size());
    const auto bridge = find_bridges(n, edges);
    DisjointSets sets(static_cast<std::size_t>(n));
    std::vector<int> cut;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (bridge[e] && edges[e].cuttable)
            cut.push_back(static_cast<int>(e));
        else
            sets.unite(edges[e].a, edges[e].b);
    }
    if (cut.empty()) return {sub};
    std::sort(cut.begin(), cut.end(),
              [&](int x, int y) { return edges[x].conflict_edge < edges[y].conflict_edge; });

    // Piece tree, visited breadth-first from the piece holding node 0.
    std::map<int, std::vector<int>> tree;
    for (int e : cut) {
        tree[sets.find(edges[e].a)].push_back(e);
        tree[sets.find(edges[e].b)].push_back(e);
    }
    std::map<int, int> piece_index;
    std::vector<int> piece_root;
    std::vector<std::optional<Bridge>> parent_bridge;
    std::deque<int> queue{sets.find(0)};
    piece_index[sets.find(0)] = 0;
    piece_root.push_back(sets.find(0));
    parent_bridge.emplace_back();
    while (!queue.empty()) {
        const int piece = queue.front();
        queue.pop_front();
        for (int e : tree[piece]) {
            const auto& edge = lg.conflict_edges[edges[e].conflict_edge];
            const bool u_here = sets.find(node_of(edge.u)) == piece;
            const int other_piece = sets.find(node_of(u_here ? edge.v : edge.u));
            if (piece_index.contains(other_piece)) continue;
            piece_index[other_piece] = static_cast<int>(piece_root.size());
            piece_root.push_back(other_piece);
            parent_bridge.push_back(Bridge{edges[e].conflict_edge, u_here ? edge.u : edge.v, u_here ? edge.v : edge.u});
            queue.push_back(other_piece);
        }
    }

    std::vector<SubProblem> out(piece_root.size());
    auto piece_of_vertex = [&](int v) { return piece_index.at(sets.find(node_of(v))); };
    for (std::size_t i = 0; i < sub.vertices.size(); ++i) {
        auto& p = out[piece_of_vertex(sub.vertices[i])];
        p.vertices.push_back(sub.vertices[i]);
        p.representative.push_back(sub.representative[i]);
    }
    std::vector<char> is_cut(lg.conflict_edges.size(), 0);
    for (int e : cut) is_cut[edges[e].conflict_edge] = 1;
    for (int e : sub.conflict_edges) {
        if (!is_cut[e]) out[piece_of_vertex(lg.conflict_edges[e].u)].conflict_edges.push_back(e);
    }
    for (int e : sub.stitch_edges) out[piece_of_vertex(lg.stitch_edges[e].u)].stitch_edges.push_back(e);
    for (int id : sub.candidates) out[piece_of_vertex(eg.nodes[id].vertex_a)].candidates.push_back(id);
    for (int id : sub.preselected) out[piece_of_vertex(eg.nodes[id].vertex_a)].preselected.push_back(id);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (parent_bridge[i]) out[i].boundary.push_back(*parent_bridge[i]);
    }
    return out;
}

Decomposition decompose(std::span<const Feature> features, const Config& cfg, const DecomposeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Graphs graphs = build_graphs(features, cfg);
    Decomposition d = decompose_graphs(std::move(graphs), cfg, options);
    d.stats.elapsed = std::chrono::steady_clock::now() - start;
    return d;
}

Decomposition decompose_graphs(Graphs graphs, const Config& cfg, const DecomposeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const LayoutGraph& lg = graphs.layout;
    const EndCutGraph& eg = graphs.endcuts;
    Decomposition d;
    DecomposeStats& stats = d.stats;

    // Pieces grouped per component, each group in merge order.
    std::vector<std::vector<SubProblem>> groups;
    if (options.monolithic) {
        groups.push_back({SubProblem::whole(lg, eg)});
        stats.components = 1;
    } else {
        auto comps = split_components(lg, eg);
        stats.components = static_cast<int>(comps.size());
        for (auto& comp : comps) {
            SubProblem s = cfg.enable_preselect ? preselect_endcuts(comp, eg) : std::move(comp);
            stats.preselected += static_cast<int>(s.preselected.size());
            groups.push_back(cfg.enable_bridges ? split_bridges(s, lg, eg) : std::vector<SubProblem>{std::move(s)});
            stats.bridges_cut += static_cast<int>(groups.back().size()) - 1;
        }
    }
    std::vector<const SubProblem*> pieces;
    for (const auto& g : groups) {
        for (const auto& p : g) pieces.push_back(&p);
    }
    stats.subproblems = static_cast<int>(pieces.size());

    ModelOptions mopt;
    mopt.with_stitch = cfg.enable_stitch;
    mopt.alpha = cfg.alpha;
    struct Outcome {
        DecompResult result;
        Solution solution;
        int variables = 0;
    };
    std::vector<Outcome> outcomes(pieces.size());
    auto work = [&](std::size_t i) {
        const DecompModel model = build_decomposition_model(lg, eg, *pieces[i], mopt);
        std::optional<Seconds> remaining;
        if (options.time_limit) {
            const Seconds spent = std::chrono::steady_clock::now() - start;
            remaining = std::max(Seconds{0}, *options.time_limit - spent);
        }
        outcomes[i].solution = solve(model.ilp, remaining);
        outcomes[i].result = extract_result(model, outcomes[i].solution.values, lg, eg);
        outcomes[i].variables = static_cast<int>(model.ilp.size());
    };
    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(pieces.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < pieces.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < pieces.size(); i = next++) {
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    std::vector<int> colors(lg.vertices.size(), -1);
    std::vector<int> selected;
    Rational total(0);
    std::size_t k = 0;
    for (const auto& g : groups) {
        for (const auto& piece : g) {
            const Outcome& o = outcomes[k++];
            bool flip = false;
            if (!piece.boundary.empty()) {
                const Bridge& b = piece.boundary.front();
                flip = colors[b.u] == o.result.colors[b.v];
            }
            for (int v : piece.vertices) colors[v] = flip ? 1 - o.result.colors[v] : o.result.colors[v];
            selected.insert(selected.end(), o.result.selected_cuts.begin(), o.result.selected_cuts.end());
            total += o.result.cost;
            stats.nodes_explored += o.solution.stats.nodes_explored;
            stats.proven_optimal = stats.proven_optimal && o.solution.stats.proven_optimal;
            stats.max_variables = std::max(stats.max_variables, o.variables);
        }
    }
    std::sort(selected.begin(), selected.end());

    const Evaluation ev = evaluate_decomposition(lg, eg, colors, selected, cfg.alpha);
    if (!ev.violations.empty()) throw InfeasibleAssignment("merged decomposition is invalid: " + ev.violations.front());
    if (ev.cost > total || (stats.proven_optimal && ev.cost != total))
        throw CostMismatch("merged cost " + format_rational(ev.cost) + " differs from solved cost " +
                           format_rational(total));

    DecompResult& r = d.result;
    r.colors = std::move(colors);
    r.selected_cuts = std::move(selected);
    r.conflicts = ev.conflicts;
    r.stitches = ev.stitches;
    r.cost = ev.cost;
    r.trim = merge_trim_shapes(eg, r.selected_cuts);
    d.graphs = std::move(graphs);
    stats.elapsed = std::chrono::steady_clock::now() - start;
    return d;
}

BaselineDecomposition decompose_lelele(std::span<const Feature> features, const Config& cfg,
                                       std::optional<Seconds> time_limit) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    BaselineDecomposition out;
    out.layout = build_conflict_edges(features, cfg);
    const LayoutGraph& lg = out.layout;
    const std::size_t nv = lg.vertices.size();
    DisjointSets sets(nv);
    for (const auto& e : lg.conflict_edges) sets.unite(e.u, e.v);

    std::map<int, std::vector<int>> members;
    for (std::size_t v = 0; v < nv; ++v) members[sets.find(static_cast<int>(v))].push_back(static_cast<int>(v));
    std::map<int, std::vector<int>> edges_of;
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e)
        edges_of[sets.find(lg.conflict_edges[e].u)].push_back(static_cast<int>(e));

    out.result.colors.assign(nv, 0);
    for (const auto& [root, vertices] : members) {
        ++out.components;
        LayoutGraph part;
        std::map<int, int> local;
        for (int v : vertices) {
            local[v] = static_cast<int>(part.vertices.size());
            Segment s = lg.vertices[v];
            s.id = local[v];
            part.vertices.push_back(std::move(s));
        }
        const auto& global_edges = edges_of[root];
        for (int e : global_edges) part.conflict_edges.push_back({local[lg.conflict_edges[e].u], local[lg.conflict_edges[e].v], {}});
        const BaselineModel model = build_lelele_baseline(part);
        std::optional<Seconds> remaining;
        if (time_limit) remaining = std::max(Seconds{0}, *time_limit - Seconds(std::chrono::steady_clock::now() - start));
        const Solution sol = solve(model.ilp, remaining);
        out.proven_optimal = out.proven_optimal && sol.stats.proven_optimal;
        const BaselineResult r = extract_baseline(model, sol.values, part);
        for (int v : vertices) out.result.colors[v] = r.colors[local[v]];
        for (int e : r.conflicts) out.result.conflicts.push_back(global_edges[e]);
    }
    std::sort(out.result.conflicts.begin(), out.result.conflicts.end());
    out.result.cost = Rational(static_cast<std::int64_t>(out.result.conflicts.size()));
    return out;
}

}  // namespace leleec
