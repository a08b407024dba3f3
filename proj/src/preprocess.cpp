#include "admit/preprocess.hpp"

#include <algorithm>

#include "admit/algorithms.hpp"

namespace admit {

namespace {

void require_fixable(const Instance& inst) {
    if (!inst.lower_groups.empty()) throw PreconditionError("lower-quota fixing: lower groups are not supported");
    // da_without checks the remaining preconditions.
}

std::vector<char> mask(const Instance& inst, const std::vector<int>& colleges) {
    std::vector<char> out(inst.colleges.size(), 0);
    for (int j : colleges) out[static_cast<std::size_t>(j)] = 1;
    return out;
}

/// Whether college j misses its lower quota when every college outside
/// `keep` (and other than j) is closed.
bool fails_alone(const Instance& inst, const std::vector<char>& keep, int j) {
    std::vector<char> closed(inst.colleges.size(), 0);
    for (std::size_t k = 0; k < closed.size(); ++k) closed[k] = !keep[k] && static_cast<int>(k) != j;
    const auto intake = da_without(inst, closed).intake(inst);
    return intake[static_cast<std::size_t>(j)] < inst.colleges[static_cast<std::size_t>(j)].lower;
}

std::vector<int> candidates(const Instance& inst, const std::vector<char>& keep) {
    std::vector<int> out;
    for (int j = 0; j < inst.num_colleges(); ++j)
        if (!keep[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
}

}  // namespace

std::vector<int> must_open(const Instance& inst, const std::vector<int>& closed) {
    require_fixable(inst);
    const auto off = mask(inst, closed);
    const auto intake = da_without(inst, off).intake(inst);
    std::vector<int> out;
    for (int j = 0; j < inst.num_colleges(); ++j)
        if (!off[static_cast<std::size_t>(j)] && intake[static_cast<std::size_t>(j)] >= inst.colleges[static_cast<std::size_t>(j)].lower)
            out.push_back(j);
    return out;
}

std::vector<int> must_close_serial(const Instance& inst, const std::vector<int>& open_fixed) {
    require_fixable(inst);
    const auto keep = mask(inst, open_fixed);
    std::vector<int> out;
    for (int j : candidates(inst, keep))
        if (fails_alone(inst, keep, j)) out.push_back(j);
    return out;
}

std::vector<int> must_close(const Instance& inst, const std::vector<int>& open_fixed) {
    require_fixable(inst);
    const auto keep = mask(inst, open_fixed);
    const auto todo = candidates(inst, keep);
    if (todo.empty()) return {};
    (void)da_without(inst, {});  // surface precondition errors outside the parallel region
    std::vector<char> fails(todo.size(), 0);
    const long long count = static_cast<long long>(todo.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < count; ++k)
        fails[static_cast<std::size_t>(k)] = fails_alone(inst, keep, todo[static_cast<std::size_t>(k)]);
    std::vector<int> out;
    for (std::size_t k = 0; k < todo.size(); ++k)
        if (fails[k]) out.push_back(todo[k]);
    return out;
}

FixingResult fix_iterate(const Instance& inst) {
    FixingResult result;
    std::vector<int> open = must_open(inst, {});
    std::vector<int> closed;
    for (;;) {
        std::vector<int> next_closed = must_close(inst, open);
        std::vector<int> merged;
        std::set_union(closed.begin(), closed.end(), next_closed.begin(), next_closed.end(), std::back_inserter(merged));
        ++result.iterations;
        result.trace.push_back({open, merged});
        if (merged == closed) break;
        closed = std::move(merged);
        std::vector<int> next_open = must_open(inst, closed);
        std::vector<int> grown;
        std::set_union(open.begin(), open.end(), next_open.begin(), next_open.end(), std::back_inserter(grown));
        if (grown == open) break;
        open = std::move(grown);
    }
    result.must_open = open;
    result.must_close = closed;
    return result;
}

void apply_fixing(LinearModel& model, const FixingResult& fixing) {
    std::vector<int> var(static_cast<std::size_t>(model.num_colleges), -1);
    for (int v : model.vars_with_role(Role::open)) var[static_cast<std::size_t>(model.variables()[static_cast<std::size_t>(v)].role.index)] = v;
    for (int j : fixing.must_open)
        if (var[static_cast<std::size_t>(j)] >= 0) model.fix(var[static_cast<std::size_t>(j)], 1, 1);
    for (int j : fixing.must_close)
        if (var[static_cast<std::size_t>(j)] >= 0) model.fix(var[static_cast<std::size_t>(j)], 0, 0);
}

}  // namespace admit
