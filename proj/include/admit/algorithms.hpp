#pragma once

#include <span>
#include <utility>
#include <vector>

#include "admit/instance.hpp"
#include "admit/solution.hpp"

namespace admit {

enum class Side { applicant, college };

/// Deferred acceptance. Side::applicant gives the applicant-optimal stable
/// matching, Side::college the applicant-pessimal one. Lower quotas are
/// ignored. Requires strict scores, simple applications and no common quotas.
Matching da(const Instance& inst, Side side);

/// Applicant-proposing deferred acceptance in the market where every college
/// flagged in `closed` has been removed.
Matching da_without(const Instance& inst, const std::vector<char>& closed);

/// Each applicant is admitted to the first simple entry of her list whose
/// score-limit she meets.
Matching induced_matching(const Instance& inst, std::span<const int> limits);

/// Generalized Gale-Shapley for score-limits with ties: the result is an
/// H-stable vector (feasible, and no single limit can be lowered without
/// breaking that college's quota). Side::applicant yields the pointwise
/// minimum stable vector, Side::college the pointwise maximum.
std::pair<Matching, std::vector<int>> gs_scorelimits(const Instance& inst, Side side);

struct Closure {
    int college = 0;
    int admitted = 0;  // intake when the college was closed
};

struct HeuristicResult {
    Matching matching;
    std::vector<int> closed;  // in closing order
    std::vector<Closure> trace;
};

/// The closing heuristic for lower quotas: run applicant-proposing deferred
/// acceptance, close the open college with the smallest admitted/lower ratio
/// among those under their lower quota, let its students continue proposing,
/// and repeat. Ratio ties go to fewer admitted, then to the lower index.
HeuristicResult lower_quota_heuristic(const Instance& inst);

}  // namespace admit
