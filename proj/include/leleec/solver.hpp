#pragma once

#include "leleec/ilp_model.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace leleec {

using Seconds = std::chrono::duration<double>;

struct SolveStats {
    std::uint64_t nodes_explored = 0;
    Rational best_cost;
    bool proven_optimal = false;
    Seconds elapsed{0};
};

enum class SolveStatus { optimal, time_limit };

struct Solution {
    std::vector<std::uint8_t> values;
    SolveStatus status = SolveStatus::optimal;
    SolveStats stats;
};

struct SearchOptions {
    /// Remembers, per branching position and frontier state, how far below
    /// the incumbent a finished subtree could not go. Prunes only subtrees
    /// that cannot improve, so the returned assignment is the same either way.
    bool subtree_cache = true;
};

/// Depth-first branch and bound over the model's variable order, 0 before 1,
/// with unit propagation and a committed-cost bound. Objective coefficients
/// must be non-negative. On timeout the incumbent is returned with status
/// time_limit. Throws Infeasible when no assignment satisfies the rows.
Solution solve(const IlpModel& model, std::optional<Seconds> time_limit = std::nullopt,
               const SearchOptions& options = {});

inline constexpr std::size_t kBruteForceMaxVars = 24;

struct BruteForceResult {
    std::vector<std::uint8_t> values;
    Rational cost;
};

/// Exhaustive enumeration. Ties go to the smallest assignment read as a
/// binary number with the first variable as the most significant bit.
/// Throws TooLarge above kBruteForceMaxVars variables.
BruteForceResult brute_force(const IlpModel& model);

}  // namespace leleec
