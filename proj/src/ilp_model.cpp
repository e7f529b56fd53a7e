#include "leleec/ilp_model.hpp"

#include "leleec/error.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace leleec {

const char* to_string(VarKind kind) {
    switch (kind) {
        case VarKind::color: return "color";
        case VarKind::conflict: return "conflict";
        case VarKind::endcut: return "endcut";
        case VarKind::stitch: return "stitch";
        case VarKind::merge: return "merge";
        case VarKind::aux: return "aux";
    }
    return "?";
}

int IlpModel::add_variable(std::string name, VarKind kind, int ref, Rational cost) {
    variables_.push_back({std::move(name), kind, ref});
    objective_.push_back(cost);
    return static_cast<int>(variables_.size()) - 1;
}

void IlpModel::add_constraint(std::vector<Term> terms, std::int64_t rhs, std::string label) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
    if (merged.empty() && rhs >= 0) return;
    constraints_.push_back({std::move(merged), rhs, std::move(label)});
}

std::optional<std::size_t> IlpModel::first_violated(std::span<const std::uint8_t> values) const {
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        std::int64_t activity = 0;
        for (const auto& t : constraints_[i].terms) activity += t.coef * values[t.var];
        if (activity > constraints_[i].rhs) return i;
    }
    return std::nullopt;
}

Rational IlpModel::objective_value(std::span<const std::uint8_t> values) const {
    Rational total(0);
    for (std::size_t i = 0; i < objective_.size(); ++i) {
        if (values[i]) total += objective_[i];
    }
    return total;
}

namespace {

/// A model operand: a variable, or a constant folded into the right-hand side.
struct Operand {
    int var = -1;
    int constant = 0;
};

class RowBuilder {
public:
    explicit RowBuilder(std::int64_t rhs) : rhs_(rhs) {}
    RowBuilder& add(const Operand& op, std::int64_t coef) {
        if (op.var >= 0)
            terms_.push_back({op.var, coef});
        else
            rhs_ -= coef * op.constant;
        return *this;
    }
    RowBuilder& add(int var, std::int64_t coef) { return add(Operand{var, 0}, coef); }
    void emit(IlpModel& model, std::string label) { model.add_constraint(std::move(terms_), rhs_, std::move(label)); }

private:
    std::vector<Term> terms_;
    std::int64_t rhs_;
};

struct EdgePlan {
    int edge = 0;
    bool has_cut = false;
    bool resolved = false;  // a preselected cut already removes the conflict
    std::vector<std::pair<int, int>> merges;  // dash-connected cut pairs through a common neighbor
};

std::vector<int> bfs_order(const std::vector<int>& nodes, const std::map<int, std::vector<int>>& adjacency) {
    std::map<int, bool> seen;
    std::vector<int> order;
    for (int start : nodes) {
        if (seen[start]) continue;
        seen[start] = true;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            order.push_back(n);
            if (auto it = adjacency.find(n); it != adjacency.end()) {
                for (int m : it->second) {
                    if (!seen[m]) {
                        seen[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    return order;
}

}  // namespace

SubProblem SubProblem::whole(const LayoutGraph& lg, const EndCutGraph& eg) {
    SubProblem sub;
    for (std::size_t v = 0; v < lg.vertices.size(); ++v) {
        sub.vertices.push_back(static_cast<int>(v));
        sub.representative.push_back(static_cast<int>(v));
    }
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e) sub.conflict_edges.push_back(static_cast<int>(e));
    for (std::size_t e = 0; e < lg.stitch_edges.size(); ++e) sub.stitch_edges.push_back(static_cast<int>(e));
    for (std::size_t c = 0; c < eg.nodes.size(); ++c) sub.candidates.push_back(static_cast<int>(c));
    return sub;
}

bool SubProblem::contains(int vertex) const {
    return std::binary_search(vertices.begin(), vertices.end(), vertex);
}

int SubProblem::rep_of(int vertex) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), vertex);
    return representative[static_cast<std::size_t>(it - vertices.begin())];
}

DecompModel build_decomposition_model(const LayoutGraph& lg, const EndCutGraph& eg, const SubProblem& scope,
                                      const ModelOptions& options) {
    DecompModel m;
    m.scope = scope;
    m.options = options;
    m.color_var.assign(lg.vertices.size(), -1);
    m.conflict_var.assign(lg.conflict_edges.size(), -1);
    m.endcut_var.assign(eg.nodes.size(), -1);
    m.stitch_var.assign(lg.stitch_edges.size(), -1);

    const std::size_t nc = eg.nodes.size();
    std::vector<char> in_scope(nc, 0), fixed_on(nc, 0);
    for (int id : scope.candidates) {
        if (id < 0 || static_cast<std::size_t>(id) >= nc)
            throw InconsistentAnnotation("scope references unknown candidate " + std::to_string(id));
        in_scope[id] = 1;
    }
    for (int id : scope.preselected) fixed_on[id] = 1;

    auto cut_of = [&](int e) -> std::optional<int> {
        const auto& edge = lg.conflict_edges[e];
        if (!edge.candidate) return std::nullopt;
        const int id = *edge.candidate;
        if (id < 0 || static_cast<std::size_t>(id) >= nc)
            throw InconsistentAnnotation("conflict edge " + std::to_string(e) + " names unknown candidate " +
                                         std::to_string(id));
        const auto& c = eg.nodes[id];
        if (c.vertex_a != edge.u || c.vertex_b != edge.v)
            throw InconsistentAnnotation("candidate " + std::to_string(id) + " does not join the endpoints of edge " +
                                         std::to_string(e));
        if (!in_scope[id]) return std::nullopt;
        return id;
    };

    // Class graph and the static branching order.
    std::map<int, std::vector<int>> class_adj;
    auto link = [&](int u, int v) {
        const int ru = scope.rep_of(u), rv = scope.rep_of(v);
        if (ru == rv) return;
        class_adj[ru].push_back(rv);
        class_adj[rv].push_back(ru);
    };
    for (int e : scope.conflict_edges) link(lg.conflict_edges[e].u, lg.conflict_edges[e].v);
    for (int e : scope.stitch_edges) link(lg.stitch_edges[e].u, lg.stitch_edges[e].v);
    for (auto& [_, list] : class_adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    std::vector<int> reps(scope.representative);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    const auto order = bfs_order(reps, class_adj);
    std::map<int, int> position;
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
    auto later = [&](int u, int v) { return std::max(position[scope.rep_of(u)], position[scope.rep_of(v)]); };

    // Cuts at each vertex for the merged-cut terms.
    std::map<int, std::vector<std::pair<int, int>>> cuts_at;
    for (int e : scope.conflict_edges) {
        if (auto id = cut_of(e)) {
            cuts_at[lg.conflict_edges[e].u].emplace_back(lg.conflict_edges[e].v, *id);
            cuts_at[lg.conflict_edges[e].v].emplace_back(lg.conflict_edges[e].u, *id);
        }
    }
    for (auto& [_, list] : cuts_at) std::sort(list.begin(), list.end());

    std::vector<std::vector<EdgePlan>> plans_at(order.size());
    std::vector<std::vector<int>> stitches_at(order.size());
    for (int e : scope.conflict_edges) {
        const auto& edge = lg.conflict_edges[e];
        EdgePlan plan;
        plan.edge = e;
        if (auto id = cut_of(e)) {
            plan.has_cut = true;
            plan.resolved = fixed_on[*id] != 0;
        }
        if (options.merge_correction) {
            for (auto [k, p] : cuts_at[edge.u]) {
                if (k == edge.v) continue;
                for (auto [k2, q] : cuts_at[edge.v]) {
                    if (k2 != k || !eg.is_dash(p, q)) continue;
                    plan.merges.emplace_back(std::min(p, q), std::max(p, q));
                    if (fixed_on[p] && fixed_on[q]) plan.resolved = true;
                }
            }
        }
        plans_at[later(edge.u, edge.v)].push_back(std::move(plan));
    }
    for (int e : scope.stitch_edges) stitches_at[later(lg.stitch_edges[e].u, lg.stitch_edges[e].v)].push_back(e);

    IlpModel& ilp = m.ilp;
    auto ec_operand = [&](int id) -> Operand {
        if (fixed_on[id]) return {-1, 1};
        if (m.endcut_var[id] < 0) {
            const auto& c = eg.nodes[id];
            m.endcut_var[id] = ilp.add_variable("ec_" + std::to_string(c.vertex_a) + "_" + std::to_string(c.vertex_b),
                                                VarKind::endcut, id);
        }
        return {m.endcut_var[id], 0};
    };
    std::map<std::pair<int, int>, int> merge_var;

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int rep = order[pos];
        const int x = ilp.add_variable("x_" + std::to_string(rep), VarKind::color, rep);
        for (std::size_t i = 0; i < scope.vertices.size(); ++i) {
            if (scope.representative[i] == rep) m.color_var[scope.vertices[i]] = x;
        }
        for (const auto& plan : plans_at[pos]) {
            if (plan.resolved) continue;
            const auto& edge = lg.conflict_edges[plan.edge];
            if (plan.has_cut) ec_operand(*edge.candidate);
            for (auto pq : plan.merges) {
                ec_operand(pq.first);
                ec_operand(pq.second);
                if (!merge_var.contains(pq)) {
                    merge_var[pq] = ilp.add_variable("g_" + std::to_string(pq.first) + "_" + std::to_string(pq.second),
                                                     VarKind::merge, plan.edge);
                    ++m.merge_vars;
                }
            }
            m.conflict_var[plan.edge] = ilp.add_variable(
                "c_" + std::to_string(edge.u) + "_" + std::to_string(edge.v), VarKind::conflict, plan.edge, Rational(1));
        }
        for (int e : stitches_at[pos]) {
            const auto& edge = lg.stitch_edges[e];
            if (!options.with_stitch || scope.rep_of(edge.u) == scope.rep_of(edge.v)) continue;
            m.stitch_var[e] = ilp.add_variable("s_" + std::to_string(edge.u) + "_" + std::to_string(edge.v),
                                               VarKind::stitch, e, options.alpha);
        }
    }
    for (int id : scope.candidates) {
        if (!fixed_on[id]) ec_operand(id);
    }

    // Conflict rows, and rows forbidding a cut between different masks.
    std::vector<const EdgePlan*> plans;
    for (const auto& bucket : plans_at) {
        for (const auto& p : bucket) plans.push_back(&p);
    }
    std::sort(plans.begin(), plans.end(), [](const EdgePlan* a, const EdgePlan* b) { return a->edge < b->edge; });
    for (const EdgePlan* plan : plans) {
        if (plan->resolved) continue;
        const auto& edge = lg.conflict_edges[plan->edge];
        const int xi = m.color_var[edge.u];
        const int xj = m.color_var[edge.v];
        const int c = m.conflict_var[plan->edge];
        const Operand ec = plan->has_cut ? ec_operand(*edge.candidate) : Operand{-1, 0};
        const std::string tag = "e" + std::to_string(plan->edge);

        RowBuilder same1(1);
        same1.add(xi, 1).add(xj, 1).add(c, -1).add(ec, -1);
        RowBuilder same0(-1);
        same0.add(xi, -1).add(xj, -1).add(c, -1).add(ec, -1);
        for (auto pq : plan->merges) {
            same1.add(merge_var.at(pq), -1);
            same0.add(merge_var.at(pq), -1);
        }
        same1.emit(ilp, "same1_" + tag);
        same0.emit(ilp, "same0_" + tag);

        if (plan->has_cut && ec.var >= 0 && xi != xj) {
            RowBuilder(1).add(ec, 1).add(xi, 1).add(xj, -1).emit(ilp, "cutmask_a_" + tag);
            RowBuilder(1).add(ec, 1).add(xj, 1).add(xi, -1).emit(ilp, "cutmask_b_" + tag);
        }
    }

    // Trim-mask exclusion.
    for (auto [p, q] : eg.solid_edges) {
        if (!in_scope[p] || !in_scope[q]) continue;
        RowBuilder(1).add(ec_operand(p), 1).add(ec_operand(q), 1).emit(
            ilp, "trim_ec" + std::to_string(p) + "_ec" + std::to_string(q));
    }

    // Merge linearization: g = ec_p * ec_q.
    for (const auto& [pq, g] : merge_var) {
        const Operand p = ec_operand(pq.first), q = ec_operand(pq.second);
        const std::string tag = "g" + std::to_string(pq.first) + "_" + std::to_string(pq.second);
        RowBuilder(1).add(p, 1).add(q, 1).add(g, -1).emit(ilp, "merge_lo_" + tag);
        RowBuilder(0).add(g, 1).add(p, -1).emit(ilp, "merge_p_" + tag);
        RowBuilder(0).add(g, 1).add(q, -1).emit(ilp, "merge_q_" + tag);
    }

    // Stitch rows, or hard equality when stitches are not allowed.
    for (int e : scope.stitch_edges) {
        const auto& edge = lg.stitch_edges[e];
        const int xi = m.color_var[edge.u], xj = m.color_var[edge.v];
        if (xi == xj) continue;
        const std::string tag = "s" + std::to_string(e);
        const int s = m.stitch_var[e];
        RowBuilder a(0), b(0);
        a.add(xi, 1).add(xj, -1);
        b.add(xj, 1).add(xi, -1);
        if (s >= 0) {
            a.add(s, -1);
            b.add(s, -1);
        }
        a.emit(ilp, "stitch_a_" + tag);
        b.emit(ilp, "stitch_b_" + tag);
    }
    return m;
}

DecompModel build_model_no_stitch(const LayoutGraph& lg, const EndCutGraph& eg, bool merge_correction) {
    ModelOptions options;
    options.with_stitch = false;
    options.merge_correction = merge_correction;
    return build_decomposition_model(lg, eg, SubProblem::whole(lg, eg), options);
}

DecompModel build_model_with_stitch(const LayoutGraph& lg, const EndCutGraph& eg, const Rational& alpha) {
    ModelOptions options;
    options.with_stitch = true;
    options.alpha = alpha;
    return build_decomposition_model(lg, eg, SubProblem::whole(lg, eg), options);
}

DecompResult extract_result(const DecompModel& model, std::span<const std::uint8_t> values, const LayoutGraph& lg,
                            const EndCutGraph& eg) {
    const IlpModel& ilp = model.ilp;
    if (values.size() != ilp.size())
        throw InfeasibleAssignment("assignment has " + std::to_string(values.size()) + " values for " +
                                   std::to_string(ilp.size()) + " variables");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > 1) throw InfeasibleAssignment("variable " + ilp.variables()[i].name + " is not binary");
    }
    if (auto row = ilp.first_violated(values))
        throw InfeasibleAssignment("violates " + ilp.constraints()[*row].label);

    DecompResult r;
    r.colors.assign(lg.vertices.size(), -1);
    for (int v : model.scope.vertices) r.colors[v] = values[model.color_var[v]];
    for (std::size_t id = 0; id < model.endcut_var.size(); ++id) {
        if (model.endcut_var[id] >= 0 && values[model.endcut_var[id]]) r.selected_cuts.push_back(static_cast<int>(id));
    }
    for (int id : model.scope.preselected) r.selected_cuts.push_back(id);
    std::sort(r.selected_cuts.begin(), r.selected_cuts.end());
    for (std::size_t e = 0; e < model.conflict_var.size(); ++e) {
        if (model.conflict_var[e] >= 0 && values[model.conflict_var[e]]) r.conflicts.push_back(static_cast<int>(e));
    }
    for (std::size_t e = 0; e < model.stitch_var.size(); ++e) {
        if (model.stitch_var[e] >= 0 && values[model.stitch_var[e]]) r.stitches.push_back(static_cast<int>(e));
    }
    r.cost = Rational(static_cast<std::int64_t>(r.conflicts.size())) +
             model.options.alpha * static_cast<std::int64_t>(r.stitches.size());
    const Rational objective = ilp.objective_value(values);
    if (r.cost != objective)
        throw CostMismatch("recounted cost " + format_rational(r.cost) + " differs from objective " +
                           format_rational(objective));
    r.trim = merge_trim_shapes(eg, r.selected_cuts);
    return r;
}

BaselineModel build_lelele_baseline(const LayoutGraph& lg) {
    BaselineModel m;
    const std::size_t nv = lg.vertices.size();
    m.bit0.assign(nv, -1);
    m.bit1.assign(nv, -1);
    m.conflict_var.assign(lg.conflict_edges.size(), -1);

    std::map<int, std::vector<int>> adj;
    for (const auto& e : lg.conflict_edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& [_, list] : adj) std::sort(list.begin(), list.end());
    std::vector<int> nodes(nv);
    for (std::size_t v = 0; v < nv; ++v) nodes[v] = static_cast<int>(v);
    const auto order = bfs_order(nodes, adj);
    std::vector<int> position(nv);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> edges_at(nv);
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e) {
        const auto& edge = lg.conflict_edges[e];
        edges_at[std::max(position[edge.u], position[edge.v])].push_back(static_cast<int>(e));
    }

    IlpModel& ilp = m.ilp;
    std::vector<std::pair<int, int>> diff(lg.conflict_edges.size(), {-1, -1});
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int v = order[pos];
        m.bit0[v] = ilp.add_variable("b0_" + std::to_string(v), VarKind::color, v);
        m.bit1[v] = ilp.add_variable("b1_" + std::to_string(v), VarKind::color, v);
        for (int e : edges_at[pos]) {
            const auto& edge = lg.conflict_edges[e];
            const std::string tag = std::to_string(edge.u) + "_" + std::to_string(edge.v);
            diff[e].first = ilp.add_variable("d0_" + tag, VarKind::aux, e);
            diff[e].second = ilp.add_variable("d1_" + tag, VarKind::aux, e);
            m.conflict_var[e] = ilp.add_variable("c_" + tag, VarKind::conflict, e, Rational(1));
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        RowBuilder(1).add(m.bit0[v], 1).add(m.bit1[v], 1).emit(ilp, "code_v" + std::to_string(v));
    }
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e) {
        const auto& edge = lg.conflict_edges[e];
        const std::string tag = "e" + std::to_string(e);
        const std::pair<const std::vector<int>*, int> bits[] = {{&m.bit0, diff[e].first}, {&m.bit1, diff[e].second}};
        for (const auto& [plane, d] : bits) {
            const int bi = (*plane)[edge.u], bj = (*plane)[edge.v];
            RowBuilder(0).add(d, 1).add(bi, -1).add(bj, -1).emit(ilp, "diff_lo_" + tag);
            RowBuilder(2).add(d, 1).add(bi, 1).add(bj, 1).emit(ilp, "diff_hi_" + tag);
        }
        RowBuilder(-1).add(m.conflict_var[e], -1).add(diff[e].first, -1).add(diff[e].second, -1).emit(ilp, "same_" + tag);
    }
    return m;
}

BaselineResult extract_baseline(const BaselineModel& model, std::span<const std::uint8_t> values,
                                const LayoutGraph& lg) {
    if (values.size() != model.ilp.size()) throw InfeasibleAssignment("assignment size mismatch");
    if (auto row = model.ilp.first_violated(values))
        throw InfeasibleAssignment("violates " + model.ilp.constraints()[*row].label);
    BaselineResult r;
    for (std::size_t v = 0; v < lg.vertices.size(); ++v)
        r.colors.push_back(values[model.bit0[v]] + 2 * values[model.bit1[v]]);
    for (std::size_t e = 0; e < lg.conflict_edges.size(); ++e) {
        if (values[model.conflict_var[e]]) r.conflicts.push_back(static_cast<int>(e));
    }
    r.cost = Rational(static_cast<std::int64_t>(r.conflicts.size()));
    if (r.cost != model.ilp.objective_value(values)) throw CostMismatch("baseline cost disagrees with objective");
    return r;
}

}  // namespace leleec
