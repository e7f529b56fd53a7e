#pragma once

#include "leleec/endcut.hpp"
#include "leleec/layout_graph.hpp"
#include "leleec/rational.hpp"
#include "leleec/result.hpp"
#include "leleec/subproblem.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace leleec {

enum class VarKind { color, conflict, endcut, stitch, merge, aux };

const char* to_string(VarKind kind);

struct Variable {
    std::string name;
    VarKind kind = VarKind::aux;
    int ref = -1;  ///< vertex / edge / candidate id the variable stands for
};

struct Term {
    int var = 0;
    std::int64_t coef = 0;
    bool operator==(const Term&) const = default;
};

/// sum(coef * var) <= rhs over binary variables.
struct Constraint {
    std::vector<Term> terms;
    std::int64_t rhs = 0;
    std::string label;
};

/// A 0-1 program: minimize objective . x subject to constraints.
class IlpModel {
public:
    int add_variable(std::string name, VarKind kind, int ref, Rational cost = Rational(0));

    /// Merges repeated variables and drops zero coefficients. A row with no
    /// terms left is kept only when it is violated (0 > rhs).
    void add_constraint(std::vector<Term> terms, std::int64_t rhs, std::string label);

    std::size_t size() const { return variables_.size(); }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Rational>& objective() const { return objective_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    std::optional<std::size_t> first_violated(std::span<const std::uint8_t> values) const;
    Rational objective_value(std::span<const std::uint8_t> values) const;

private:
    std::vector<Variable> variables_;
    std::vector<Rational> objective_;
    std::vector<Constraint> constraints_;
};

struct ModelOptions {
    bool with_stitch = false;
    Rational alpha{1, 10};
    /// Adds the merged-cut terms to the conflict rows. Off reproduces the
    /// original rows that report a conflict even when two merged cuts join
    /// both endpoints through a common neighbor.
    bool merge_correction = true;
};

/// A decomposition ILP together with the map back to the graphs.
struct DecompModel {
    IlpModel ilp;
    SubProblem scope;
    ModelOptions options;
    std::vector<int> color_var;     ///< per vertex (graph-wide), -1 outside the scope
    std::vector<int> conflict_var;  ///< per conflict edge, -1 when absent or resolved up front
    std::vector<int> endcut_var;    ///< per candidate, -1 when absent or preselected
    std::vector<int> stitch_var;    ///< per stitch edge
    int merge_vars = 0;
};

DecompModel build_decomposition_model(const LayoutGraph& lg, const EndCutGraph& eg, const SubProblem& scope,
                                      const ModelOptions& options);

DecompModel build_model_no_stitch(const LayoutGraph& lg, const EndCutGraph& eg, bool merge_correction = true);
DecompModel build_model_with_stitch(const LayoutGraph& lg, const EndCutGraph& eg, const Rational& alpha);

/// Maps a feasible assignment back to masks, cuts, conflicts and stitches
/// for the vertices in the model's scope (other vertices get color -1).
/// Throws InfeasibleAssignment on a violated row and CostMismatch when the
/// recounted cost disagrees with the objective.
DecompResult extract_result(const DecompModel& model, std::span<const std::uint8_t> values,
                            const LayoutGraph& lg, const EndCutGraph& eg);

/// Three-mask coloring ILP without cuts or stitches: two bits per vertex,
/// code 3 forbidden, one conflict variable per edge.
struct BaselineModel {
    IlpModel ilp;
    std::vector<int> bit0;
    std::vector<int> bit1;
    std::vector<int> conflict_var;
};

BaselineModel build_lelele_baseline(const LayoutGraph& lg);

struct BaselineResult {
    std::vector<int> colors;     ///< 0, 1 or 2 per vertex
    std::vector<int> conflicts;  ///< conflict edge ids
    Rational cost;
};

BaselineResult extract_baseline(const BaselineModel& model, std::span<const std::uint8_t> values,
                                const LayoutGraph& lg);

/// CPLEX LP text. Byte-identical for identical models.
std::string export_lp(const IlpModel& model);

}  // namespace leleec
