#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "admit/instance.hpp"
#include "admit/model.hpp"
#include "admit/solution.hpp"

namespace admit {

/// Objectives a builder can attach on top of its constraints.
enum class ObjectiveKind {
    none,
    applicant_optimal,       // min sum of ranks over admitted entries
    applicant_pessimal,      // max sum of ranks
    min_score_limits,        // min sum of all score-limits
    lex_matched_then_limits  // max admitted, then min sum of score-limits
};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective(std::string_view name);

/// Replaces the objectives of a model built from `inst`. Rank objectives are
/// followed by a min-score-limit phase when the model carries score-limits.
void set_objective(LinearModel& model, const Instance& inst, ObjectiveKind kind);

struct ClassicalOptions {
    bool ties = false;  // weak stability: scores compared with >=
    ObjectiveKind objective = ObjectiveKind::none;
};

/// Matching variables with applicant and college feasibility plus one
/// stability row per application: n + m + |E| constraints.
LinearModel build_classical(const Instance& inst, const ClassicalOptions& opts = {});

enum class ScoreLimitMode {
    strict,    // strict scores; unfilled colleges get limit 0
    ties_min,  // minimum total score-limit objective
    ties_full  // witness variables describing every stable vector
};

std::string_view to_string(ScoreLimitMode mode);
ScoreLimitMode parse_mode(std::string_view name);

/// Matching plus one score-limit per college. Strict mode emits
/// n + m + 2|E| + 2m constraints.
LinearModel build_scorelimits(const Instance& inst, ScoreLimitMode mode,
                              ObjectiveKind objective = ObjectiveKind::none);

/// Lower quotas with open/closed flags. Lower-quota groups are modeled with
/// all-or-nothing opening and a shared lower quota on the group intake; their
/// members carry no blocking-group condition.
LinearModel build_lower(const Instance& inst, ObjectiveKind objective = ObjectiveKind::none);

/// Common upper quotas with a score-limit per quota set, singletons included.
LinearModel build_common(const Instance& inst, ObjectiveKind objective = ObjectiveKind::none);

/// Paired applications in explicit form.
LinearModel build_paired(const Instance& inst, ObjectiveKind objective = ObjectiveKind::none);

/// Paired applications rewritten as a common-quota market: every pair of
/// colleges becomes an artificial college, and each original college c_j
/// becomes the quota set of c_j and the pairs containing it. Variable names of
/// the matching agree with build_paired.
LinearModel build_paired_via_common(const Instance& inst);

enum class GroupStability { enforce, drop_with_lex_objective };
enum class ClosureRule { min_limits, witnesses };

struct CombinedPolicy {
    bool ties = false;
    bool lower = false;
    bool common = false;
    GroupStability group_stability = GroupStability::enforce;
    /// How stability of the score-limits is closed when ties are allowed.
    ClosureRule closure = ClosureRule::min_limits;
};

/// One model for any mix of ties, lower quotas and common quotas. With every
/// flag off it is the classical model. Otherwise it is score-limit based:
/// strict policies use the unfilled-means-zero rows, tie policies close
/// stability with the minimum-limit objective or the witness rows (colleges
/// only). Dropping group stability installs [max admitted, min limits].
LinearModel build_combined(const Instance& inst, const CombinedPolicy& policy);

/// Raised when an assignment does not fit or does not satisfy a model.
class AssignmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Recovers the typed solution from a full assignment. Throws AssignmentError
/// ("constraint violated: <label>") when the assignment is not feasible.
Solution extract_solution(const LinearModel& model, const std::vector<std::int64_t>& assignment);

/// Matching variables, in declaration order.
std::vector<int> assignment_vars(const LinearModel& model);

/// Score-limit variables of the colleges, in college order.
std::vector<int> limit_vars(const LinearModel& model);

}  // namespace admit
