#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "admit/instance.hpp"
#include "admit/solution.hpp"

namespace admit {

/// Stability notions, each checked straight from its definition.
enum class Variant {
    classical,      // blocking pair unless the college is full with strictly higher scores
    weak_ties,      // blocking pair unless the college is full with scores at least as high
    scorelimits_h,  // H-stable score-limits; the matching is the one the limits induce
    lower,          // pairwise stability at open colleges, no blocking group at closed ones
    common,         // every rejection witnessed by a college or quota set full of better students
    paired,         // rejected entries (simple or paired) face a college full of better students
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

enum class ViolationKind {
    quota_breach,
    blocking_pair,
    blocking_group,
    reducible_score_limit,
    unfilled_positive_limit,
    common_quota_breach,
    paired_block,
};

std::string_view to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::vector<std::string> entities;
    std::string explanation;
};

enum class Verdict { stable, unstable, infeasible };

std::string_view to_string(Verdict v);

struct StabilityReport {
    Verdict verdict = Verdict::stable;
    std::vector<Violation> violations;
};

/// Raised when a solution lacks data the variant needs or does not fit the
/// instance (wrong vector lengths, limits out of range, ...).
class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full audit: every violation is listed with its witnesses. The verdict is
/// `infeasible` when any quota is breached, else `unstable` when any
/// stability violation exists.
StabilityReport check(const Instance& inst, const Solution& sol, Variant variant);

/// Same decision as check(...).verdict == Verdict::stable, without building
/// the report.
bool is_stable(const Instance& inst, const Solution& sol, Variant variant);

/// Feasibility-only audit (quotas, lower quotas, open flags) for solutions of
/// combined models that have no single stability definition.
StabilityReport check_feasibility(const Instance& inst, const Solution& sol);

struct StableSet {
    std::vector<Solution> solutions;
    bool truncated = false;
};

/// Largest candidate space the enumerators accept: the number of matchings
/// (product of list lengths + 1) or of score-limit vectors.
inline constexpr double kEnumerationGuard = 1 << 22;

/// Exhaustive enumeration of every stable solution of the variant, in a
/// fixed order. Matchings are enumerated applicant by applicant; for
/// scorelimits_h the score-limit vectors are enumerated and the matching is
/// derived. Throws std::length_error when the candidate space exceeds
/// kEnumerationGuard. Runs the candidate scan with OpenMP when available.
StableSet enumerate_stable(const Instance& inst, Variant variant, std::size_t cap);

/// Single-threaded reference for enumerate_stable; identical output.
StableSet enumerate_stable_serial(const Instance& inst, Variant variant, std::size_t cap);

/// Size of the candidate space enumerate_stable would scan.
double candidate_count(const Instance& inst, Variant variant);

}  // namespace admit
