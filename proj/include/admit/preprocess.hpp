#pragma once

#include <vector>

#include "admit/instance.hpp"
#include "admit/model.hpp"

namespace admit {

/// One round of the fixing procedure: the colleges proven open (X) and closed (Y).
struct FixingRound {
    std::vector<int> open;
    std::vector<int> closed;
};

struct FixingResult {
    std::vector<int> must_open;   // sorted college indices
    std::vector<int> must_close;  // sorted college indices
    int iterations = 0;
    std::vector<FixingRound> trace;
};

/// Colleges that reach their lower quota in the applicant-proposing stable
/// matching of the market without the `closed` colleges. Each is open in every
/// stable solution in which the `closed` colleges are closed.
std::vector<int> must_open(const Instance& inst, const std::vector<int>& closed);

/// Colleges outside `open_fixed` that miss their lower quota even when every
/// other college outside `open_fixed` is closed. The per-college runs are
/// independent and run in parallel with OpenMP when available.
std::vector<int> must_close(const Instance& inst, const std::vector<int>& open_fixed);

/// Single-threaded reference for must_close; identical output.
std::vector<int> must_close_serial(const Instance& inst, const std::vector<int>& open_fixed);

/// Alternates must_open and must_close until one of the sets stops changing.
FixingResult fix_iterate(const Instance& inst);

/// Pins the open flags of a lower-quota model to the fixings.
void apply_fixing(LinearModel& model, const FixingResult& fixing);

}  // namespace admit
