#pragma once

#include <string>

#include <json.hpp>

#include "admit/algorithms.hpp"
#include "admit/instance.hpp"
#include "admit/oracle.hpp"
#include "admit/preprocess.hpp"
#include "admit/solution.hpp"
#include "admit/solver.hpp"

namespace admit::cli {

using Json = nlohmann::ordered_json;

/// {"matching": {...}, "score_limits": {...}, "set_limits": {...}, "open": {...}, "group_open": {...}}
/// Keys other than "matching" are present only when modeled.
Json solution_json(const Instance& inst, const Solution& sol);

/// Accepts the document produced by solution_json, or any object holding it
/// under "solution". Throws ValidationError on malformed input.
Solution parse_solution(const Instance& inst, const nlohmann::json& doc);

Json report_json(const StabilityReport& report);
Json fixing_json(const Instance& inst, const FixingResult& fixing);
Json heuristic_json(const Instance& inst, const HeuristicResult& result);
Json stats_json(const SolveStats& stats);

}  // namespace admit::cli
