#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "admit/model.hpp"

namespace admit {

struct SolveLimits {
    std::int64_t node_cap = 0;       // 0 = unlimited
    double time_cap_seconds = 0.0;   // 0 = unlimited
};

enum class SolveStatus { optimal, feasible, infeasible, limit_reached };

std::string_view to_string(SolveStatus status);

struct SolveStats {
    std::int64_t nodes = 0;
    double seconds = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    /// Full variable assignment; empty when infeasible or when a limit was hit
    /// before any incumbent was found.
    std::vector<std::int64_t> assignment;
    /// Value of every model objective at `assignment`.
    std::vector<std::int64_t> objective_values;
    /// Proven optimum of each lexicographic phase (solve_lex only).
    std::vector<std::int64_t> phase_optima;
    SolveStats stats;

    bool has_assignment() const { return !assignment.empty(); }
};

/// Exact branch-and-bound over bounded integers with interval propagation.
/// Without objectives the first feasible assignment is returned with status
/// `feasible`; with one objective the result is `optimal`. Models carrying
/// several objectives are delegated to solve_lex. Deterministic.
SolveResult solve(const LinearModel& model, const SolveLimits& limits = {});

/// Optimizes the objectives in order, fixing each optimum before moving on.
/// Throws std::invalid_argument("no objectives") for an objective-free model.
SolveResult solve_lex(const LinearModel& model, const SolveLimits& limits = {});

struct Enumeration {
    /// Projection variables, sorted by name; rows use this column order.
    std::vector<int> columns;
    /// Distinct projected assignments, sorted lexicographically.
    std::vector<std::vector<std::int64_t>> rows;
    bool truncated = false;
    SolveStats stats;
};

/// Every distinct projection of a feasible assignment onto `projection`,
/// complete when no more than `cap` exist (otherwise `truncated` is set and
/// the first `cap` found are returned, sorted).
Enumeration enumerate_feasible(const LinearModel& model, std::span<const int> projection, std::size_t cap,
                               const SolveLimits& limits = {});

}  // namespace admit
