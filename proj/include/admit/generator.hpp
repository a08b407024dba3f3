#pragma once

#include <cstdint>
#include <string>

#include "admit/instance.hpp"

namespace admit {

enum class Topology { none, nested, random };

/// Parameters of the seeded random market generator. One seed fully
/// determines the generated instance.
struct GenConfig {
    int applicants = 5;
    int colleges = 3;
    int max_score = 5;
    int min_list = 1;
    int max_list = 3;
    /// Probability that a sampled score copies a score another applicant
    /// already holds at the same college (or quota set). 0 yields no ties.
    double tie_density = 0.0;
    int min_upper = 1;
    int max_upper = 2;
    /// Probability that a college gets a positive lower quota in [1, upper].
    double lower_probability = 0.0;
    Topology topology = Topology::none;
    int quota_sets = 0;
    /// Probability that a list entry is a paired application (needs >= 2 colleges).
    double paired_probability = 0.0;
    int lower_groups = 0;
    std::uint64_t seed = 0;
};

/// Throws ValidationError when the configuration cannot be satisfied, e.g. a
/// nested topology with no colleges, or tie density 0 with fewer distinct
/// score values than applicants.
Instance generate(const GenConfig& cfg);

Topology parse_topology(const std::string& name);

}  // namespace admit
