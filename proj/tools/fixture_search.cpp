// Seeded search for small instances with a given property, judged by the
// stability oracle. Prints the first hit as an instance document.
//
//   fixture_search <property> [max_seed]
//   properties: lower-empty, common-empty, paired-empty, heuristic-fails, two-rounds

#include <iostream>
#include <string>

#include "admit/algorithms.hpp"
#include "admit/generator.hpp"
#include "admit/io.hpp"
#include "admit/oracle.hpp"
#include "admit/preprocess.hpp"

using namespace admit;

namespace {

bool empty_set(const Instance& inst, Variant v) { return enumerate_stable(inst, v, 1).solutions.empty(); }

bool heuristic_fails(const Instance& inst) {
    Solution s;
    s.matching = lower_quota_heuristic(inst).matching;
    return !is_stable(inst, s, Variant::lower) && !empty_set(inst, Variant::lower);
}

bool two_rounds(const Instance& inst) {
    const FixingResult f = fix_iterate(inst);
    return f.trace.size() >= 2 && f.trace[1].open.size() > f.trace[0].open.size();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: fixture_search <property> [max_seed]\n";
        return 1;
    }
    const std::string prop = argv[1];
    const std::uint64_t max_seed = argc > 2 ? std::stoull(argv[2]) : 200000;
    GenConfig cfg;
    cfg.max_score = 9;
    for (int size = 2; size <= 6; ++size) {
        cfg.applicants = size;
        cfg.colleges = std::min(3, std::max(2, size - 1));
        for (std::uint64_t seed = 1; seed <= max_seed; ++seed) {
            cfg.seed = seed;
            cfg.max_list = cfg.colleges;
            bool hit = false;
            try {
                if (prop == "lower-empty" || prop == "heuristic-fails" || prop == "two-rounds") {
                    cfg.lower_probability = 0.7;
                    cfg.max_upper = 3;
                    const Instance inst = generate(cfg);
                    if (prop == "lower-empty") hit = empty_set(inst, Variant::lower);
                    else if (prop == "heuristic-fails") hit = heuristic_fails(inst);
                    else hit = two_rounds(inst);
                    if (hit) std::cout << serialize_instance(inst) << '\n';
                } else if (prop == "common-empty") {
                    cfg.topology = Topology::random;
                    // Crossing sets force one shared score order on their
                    // union, so an outside college is needed.
                    cfg.quota_sets = 2;
                    cfg.colleges = 4;
                    cfg.max_list = 3;
                    const Instance inst = generate(cfg);
                    hit = !is_nested(inst) && empty_set(inst, Variant::common);
                    if (hit) std::cout << serialize_instance(inst) << '\n';
                } else if (prop == "paired-empty") {
                    cfg.paired_probability = 0.5;
                    const Instance inst = generate(cfg);
                    hit = inst.has_paired() && empty_set(inst, Variant::paired);
                    if (hit) std::cout << serialize_instance(inst) << '\n';
                } else {
                    std::cerr << "unknown property '" << prop << "'\n";
                    return 1;
                }
            } catch (const ValidationError&) {
                continue;
            }
            if (hit) {
                std::cerr << "found: applicants=" << size << " seed=" << seed << '\n';
                return 0;
            }
        }
    }
    std::cerr << "not found\n";
    return 2;
}
