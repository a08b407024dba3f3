#include "admit/solution.hpp"

namespace admit {

std::vector<int> Matching::intake(const Instance& inst) const {
    std::vector<int> count(static_cast<std::size_t>(inst.num_colleges()), 0);
    for (int e : entry) {
        if (e < 0) continue;
        const Application& a = inst.applications[static_cast<std::size_t>(e)];
        ++count[static_cast<std::size_t>(a.college)];
        if (a.paired()) ++count[static_cast<std::size_t>(a.second)];
    }
    return count;
}

int Matching::position(const Instance& inst, int applicant) const {
    const int e = entry[static_cast<std::size_t>(applicant)];
    return e < 0 ? static_cast<int>(inst.list(applicant).size()) : inst.position(e);
}

}  // namespace admit
