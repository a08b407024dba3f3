#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "admit/instance.hpp"

namespace admit {

/// Per-applicant assignment: the index of the admitted application, or -1.
struct Matching {
    std::vector<int> entry;

    static Matching unmatched(const Instance& inst) { return {std::vector<int>(static_cast<std::size_t>(inst.num_applicants()), -1)}; }

    /// Seats taken at each college; a paired admission takes one seat at both.
    std::vector<int> intake(const Instance& inst) const;

    /// Position in the applicant's list of the admitted entry, or list length
    /// when unmatched (so smaller is better).
    int position(const Instance& inst, int applicant) const;

    bool operator==(const Matching&) const = default;
};

/// A matching together with whatever score-limits and open/closed flags the
/// producing model carried. Empty vectors mean "not modeled".
struct Solution {
    Matching matching;
    std::vector<int> limits;       // t_j per college
    std::vector<int> set_limits;   // t_p per common-quota set
    std::vector<int> open;         // o_j per college
    std::vector<int> group_open;   // o_p per lower group
    std::vector<std::pair<std::string, std::int64_t>> aux;

    bool operator==(const Solution&) const = default;
};

}  // namespace admit
