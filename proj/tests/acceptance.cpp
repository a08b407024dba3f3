// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace admit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string failure;

    void fail(const std::string& why) {
        if (pass) failure = why;
        pass = false;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Generator configuration for a seeded trial with n <= 6 and m <= 3.
GenConfig small(std::mt19937_64& rng, std::uint64_t seed, int max_score) {
    GenConfig cfg;
    cfg.applicants = 2 + static_cast<int>(rng() % 5);
    cfg.colleges = 1 + static_cast<int>(rng() % 3);
    cfg.max_score = max_score;
    cfg.max_list = cfg.colleges;
    cfg.min_list = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.colleges));
    cfg.max_upper = 1 + static_cast<int>(rng() % 2);
    cfg.seed = seed;
    return cfg;
}

// Strict score-limit model vs classical stable matchings.
Outcome criterion1() {
    Outcome out;
    std::mt19937_64 rng(101);
    double worst = 0.0;
    std::size_t matchings = 0;
    int several = 0;
    for (std::uint64_t k = 0; k < 300; ++k) {
        GenConfig cfg = small(rng, 1000 + k, 5);
        const Instance inst = generate(cfg);
        const auto t0 = Clock::now();
        const auto ip = test::ip_matchings(build_scorelimits(inst, ScoreLimitMode::strict));
        const double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        const auto oracle = test::oracle_matchings(inst, Variant::classical);
        matchings += oracle.size();
        several += oracle.size() > 1 ? 1 : 0;
        if (ip != oracle) out.fail("instance " + std::to_string(k) + ": x-projection differs from classical stable set");
        if (dt >= 1.0) out.fail("instance " + std::to_string(k) + " took " + fmt(dt) + " s");
    }
    out.detail = "300 instances, " + std::to_string(matchings) + " stable matchings, " + std::to_string(several) +
                 " instances with several, slowest " + fmt(worst) + " s";
    return out;
}

// Minimum-limit model vs generalized Gale-Shapley and the oracle minimum.
Outcome criterion2() {
    Outcome out;
    std::mt19937_64 rng(202);
    for (std::uint64_t k = 0; k < 300; ++k) {
        GenConfig cfg = small(rng, 2000 + k * 13, 3);
        cfg.applicants = std::max(cfg.applicants, 2);
        cfg.tie_density = 0.6;
        const Instance inst = test::generate_where(cfg, [](const Instance& i) { return i.has_ties(); });
        const LinearModel model = build_scorelimits(inst, ScoreLimitMode::ties_min);
        const SolveResult r = solve(model);
        if (r.status != SolveStatus::optimal) {
            out.fail("instance " + std::to_string(k) + ": ties_min not optimal");
            continue;
        }
        const std::vector<int> ip = extract_solution(model, r.assignment).limits;
        const std::vector<int> gs = gs_scorelimits(inst, Side::applicant).second;
        const auto vectors = test::oracle_limit_vectors(inst);
        std::vector<int> lo(static_cast<std::size_t>(inst.num_colleges()), inst.max_score + 1);
        for (const auto& t : vectors)
            for (std::size_t j = 0; j < t.size(); ++j) lo[j] = std::min(lo[j], t[j]);
        if (vectors.empty()) out.fail("instance " + std::to_string(k) + ": oracle found no H-stable vector");
        if (ip != gs) out.fail("instance " + std::to_string(k) + ": ties_min limits differ from gs_scorelimits");
        if (ip != lo) out.fail("instance " + std::to_string(k) + ": ties_min limits differ from the oracle minimum");
    }
    out.detail = "300 tied instances, ties_min = gs_scorelimits = pointwise minimum";
    return out;
}

// Witness model vs the full H-stable set.
Outcome criterion3() {
    Outcome out;
    std::mt19937_64 rng(303);
    std::size_t vectors = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        GenConfig cfg = small(rng, 3000 + k, static_cast<int>(rng() % 4));
        cfg.tie_density = 0.5;
        const Instance inst = generate(cfg);
        const auto ip = test::ip_limit_vectors(build_scorelimits(inst, ScoreLimitMode::ties_full));
        const auto oracle = test::oracle_limit_vectors(inst);
        vectors += oracle.size();
        if (ip != oracle) out.fail("instance " + std::to_string(k) + ": ties_full t-projection differs from H-stable set");
    }
    out.detail = "200 instances, " + std::to_string(vectors) + " H-stable vectors";
    return out;
}

GenConfig lower_config(std::mt19937_64& rng, std::uint64_t seed) {
    GenConfig cfg = small(rng, seed, 9);
    cfg.max_upper = 1 + static_cast<int>(rng() % 3);
    cfg.lower_probability = 0.6;
    return cfg;
}

// Lower-quota model vs the oracle.
Outcome criterion4() {
    Outcome out;
    std::mt19937_64 rng(404);
    int empty = 0, grouped = 0;
    for (std::uint64_t k = 0; k < 300; ++k) {
        GenConfig cfg = lower_config(rng, 4000 + k);
        if (k % 3 == 2) cfg.lower_groups = 1;
        const Instance inst = generate(cfg);
        grouped += inst.lower_groups.empty() ? 0 : 1;
        const LinearModel model = build_lower(inst);
        const bool feasible = solve(model).status != SolveStatus::infeasible;
        const auto oracle = test::oracle_matchings(inst, Variant::lower);
        if (oracle.empty()) ++empty;
        if (feasible != !oracle.empty()) out.fail("instance " + std::to_string(k) + ": feasibility disagrees with oracle");
        if (test::ip_matchings(model) != oracle) out.fail("instance " + std::to_string(k) + ": matchings differ");
    }
    const Instance i5 = test::fixture("I5");
    if (solve(build_lower(i5)).status != SolveStatus::infeasible) out.fail("I5: model not infeasible");
    if (!enumerate_stable(i5, Variant::lower, 10).solutions.empty()) out.fail("I5: oracle stable set not empty");

    const Instance i8 = test::fixture("I8");
    const HeuristicResult h = lower_quota_heuristic(i8);
    Solution hs;
    hs.matching = h.matching;
    hs.open.assign(static_cast<std::size_t>(i8.num_colleges()), 1);
    for (int j : h.closed) hs.open[static_cast<std::size_t>(j)] = 0;
    if (is_stable(i8, hs, Variant::lower)) out.fail("I8: heuristic outcome is stable");
    const LinearModel m8 = build_lower(i8);
    const SolveResult r8 = solve(m8);
    if (!r8.has_assignment() || !is_stable(i8, extract_solution(m8, r8.assignment), Variant::lower))
        out.fail("I8: IP did not return a stable solution");
    out.detail = "300 instances (" + std::to_string(grouped) + " with a lower group, " + std::to_string(empty) +
                 " without stable solutions), I5 infeasible, I8 heuristic unstable and IP stable";
    return out;
}

// Common-quota model vs the oracle.
Outcome criterion5() {
    Outcome out;
    std::mt19937_64 rng(505);
    int empty = 0, crossing = 0;
    for (std::uint64_t k = 0; k < 300; ++k) {
        GenConfig cfg = small(rng, 5000 + k, 9);
        cfg.colleges = 3 + static_cast<int>(rng() % 2);
        cfg.max_list = 3;
        cfg.min_list = 2;
        cfg.topology = k % 2 ? Topology::random : Topology::nested;
        cfg.quota_sets = 1 + static_cast<int>(rng() % 2);
        if (k % 2) {
            // Crossing sets over unit-quota colleges.
            cfg.colleges = 4;
            cfg.max_upper = 1;
            cfg.quota_sets = 2;
            cfg.applicants = 4 + static_cast<int>(rng() % 3);
        }
        const Instance inst = generate(cfg);
        const auto ip = test::ip_matchings(build_common(inst));
        const auto oracle = test::oracle_matchings(inst, Variant::common);
        if (oracle.empty()) ++empty;
        if (!is_nested(inst)) ++crossing;
        if (ip != oracle) out.fail("instance " + std::to_string(k) + ": common matchings differ");
    }
    for (std::uint64_t k = 0; k < 200; ++k) {
        GenConfig cfg = small(rng, 5500 + k, 9);
        cfg.colleges = 2 + static_cast<int>(rng() % 3);
        cfg.max_list = 3;
        cfg.topology = Topology::nested;
        cfg.quota_sets = 1 + static_cast<int>(rng() % 3);
        const Instance inst = generate(cfg);
        if (!is_nested(inst)) out.fail("nested instance " + std::to_string(k) + " is not nested");
        if (solve(build_common(inst)).status == SolveStatus::infeasible)
            out.fail("nested instance " + std::to_string(k) + ": infeasible");
    }
    const Instance i6 = test::fixture("I6");
    if (is_nested(i6)) out.fail("I6 is nested");
    if (solve(build_common(i6)).status != SolveStatus::infeasible) out.fail("I6: model not infeasible");
    if (!enumerate_stable(i6, Variant::common, 10).solutions.empty()) out.fail("I6: oracle stable set not empty");
    out.detail = "300 instances (" + std::to_string(crossing) + " not nested, " + std::to_string(empty) +
                 " without stable solutions), 200 nested all feasible, I6 infeasible";
    return out;
}

// Paired model vs the oracle and its common-quota reduction.
Outcome criterion6() {
    Outcome out;
    std::mt19937_64 rng(606);
    int empty = 0, with_pairs = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        GenConfig cfg = small(rng, 6000 + k, 9);
        cfg.colleges = 2 + static_cast<int>(rng() % 2);
        cfg.max_list = 3;
        cfg.paired_probability = 0.4;
        const Instance inst = generate(cfg);
        with_pairs += inst.has_paired() ? 1 : 0;
        const auto explicit_form = test::ip_matchings(build_paired(inst));
        const auto reduced = test::ip_matchings(build_paired_via_common(inst));
        const auto oracle = test::oracle_matchings(inst, Variant::paired);
        if (oracle.empty()) ++empty;
        if (explicit_form != oracle) out.fail("instance " + std::to_string(k) + ": paired matchings differ from oracle");
        if (explicit_form != reduced) out.fail("instance " + std::to_string(k) + ": explicit and reduced models disagree");
    }
    out.detail = "200 instances (" + std::to_string(with_pairs) + " with pairs, " + std::to_string(empty) +
                 " without stable solutions), explicit = reduction = oracle";
    return out;
}

// Deferred acceptance against the rank-sum optima, and Rural Hospitals.
Outcome criterion7() {
    Outcome out;
    std::mt19937_64 rng(707);
    for (std::uint64_t k = 0; k < 500; ++k) {
        GenConfig cfg = small(rng, 7000 + k, 9);
        const Instance inst = generate(cfg);
        const Matching app = da(inst, Side::applicant);
        const Matching col = da(inst, Side::college);
        const LinearModel min_model = build_classical(inst, {false, ObjectiveKind::applicant_optimal});
        const LinearModel max_model = build_classical(inst, {false, ObjectiveKind::applicant_pessimal});
        const SolveResult lo = solve(min_model), hi = solve(max_model);
        if (lo.status != SolveStatus::optimal || hi.status != SolveStatus::optimal) {
            out.fail("instance " + std::to_string(k) + ": classical model not solved to optimality");
            continue;
        }
        if (lo.objective_values[0] != test::rank_sum(inst, app))
            out.fail("instance " + std::to_string(k) + ": da(applicant) rank sum is not the minimum");
        if (hi.objective_values[0] != test::rank_sum(inst, col))
            out.fail("instance " + std::to_string(k) + ": da(college) rank sum is not the maximum");
        if (extract_solution(min_model, lo.assignment).matching != app)
            out.fail("instance " + std::to_string(k) + ": minimum rank sum attained by another matching");
        const StableSet set = enumerate_stable(inst, Variant::classical, 1u << 20);
        const auto intake = app.intake(inst);
        for (const auto& s : set.solutions)
            if (s.matching.intake(inst) != intake) out.fail("instance " + std::to_string(k) + ": intakes vary");
    }
    out.detail = "500 instances, da optima and intake invariance";
    return out;
}

// Fixing soundness and removal monotonicity.
Outcome criterion8() {
    Outcome out;
    std::mt19937_64 rng(808);
    int fixed = 0;
    std::size_t checked = 0;
    auto audit = [&](const Instance& inst, const std::string& name) {
        const FixingResult fix = fix_iterate(inst);
        fixed += fix.must_close.empty() && fix.must_open.size() == static_cast<std::size_t>(inst.num_colleges()) ? 0 : 1;
        for (const auto& s : enumerate_stable(inst, Variant::lower, 1u << 20).solutions) {
            ++checked;
            for (int j : fix.must_open)
                if (s.open[static_cast<std::size_t>(j)] != 1) out.fail(name + ": must_open excludes a stable solution");
            for (int j : fix.must_close)
                if (s.open[static_cast<std::size_t>(j)] != 0) out.fail(name + ": must_close excludes a stable solution");
        }
    };
    for (std::uint64_t k = 0; k < 300; ++k) audit(generate(lower_config(rng, 8000 + k)), "instance " + std::to_string(k));
    for (const char* f : {"I4", "I4b", "I5", "I8", "two_rounds"}) audit(test::fixture(f), f);

    for (std::uint64_t k = 0; k < 500; ++k) {
        GenConfig cfg = small(rng, 8500 + k, 9);
        cfg.colleges = 2 + static_cast<int>(rng() % 2);
        const Instance inst = generate(cfg);
        const int removed = static_cast<int>(rng() % static_cast<std::uint64_t>(inst.num_colleges()));
        std::vector<char> none(static_cast<std::size_t>(inst.num_colleges()), 0), one = none;
        one[static_cast<std::size_t>(removed)] = 1;
        const Matching before = da_without(inst, none), after = da_without(inst, one);
        const auto ib = before.intake(inst), ia = after.intake(inst);
        for (int j = 0; j < inst.num_colleges(); ++j)
            if (j != removed && ia[static_cast<std::size_t>(j)] < ib[static_cast<std::size_t>(j)])
                out.fail("trial " + std::to_string(k) + ": intake decreased");
        for (int i = 0; i < inst.num_applicants(); ++i)
            if (after.position(inst, i) < before.position(inst, i)) out.fail("trial " + std::to_string(k) + ": an applicant improved");
    }
    out.detail = "305 lower-quota instances (" + std::to_string(fixed) + " with fixings, " + std::to_string(checked) +
                 " stable solutions kept), 500 monotonicity trials";
    return out;
}

LinearModel random_model(std::mt19937_64& rng, int& bits) {
    LinearModel m;
    bits = 0;
    const int nv = 3 + static_cast<int>(rng() % 8);
    for (int v = 0; v < nv; ++v) {
        const int width = 1 + static_cast<int>(rng() % 7);  // domain size width+1
        int b = 0;
        while ((1 << b) < width + 1) ++b;
        if (bits + b > 24) break;
        bits += b;
        const int lo = static_cast<int>(rng() % 5) - 2;
        m.add_var("v" + std::to_string(v), lo, lo + width);
    }
    const int nc = 1 + static_cast<int>(rng() % 6);
    for (int c = 0; c < nc; ++c) {
        LinearExpr lhs;
        for (int v = 0; v < m.num_vars(); ++v)
            if (rng() % 3) lhs.add(v, static_cast<std::int64_t>(rng() % 9) - 4);
        m.add(lhs, static_cast<Relation>(rng() % 3), LinearExpr(static_cast<std::int64_t>(rng() % 11) - 3),
              Rule::applicant_feasible, "row" + std::to_string(c));
    }
    const int nobj = static_cast<int>(rng() % 3);
    for (int o = 0; o < nobj; ++o) {
        LinearExpr obj;
        for (int v = 0; v < m.num_vars(); ++v) obj.add(v, static_cast<std::int64_t>(rng() % 7) - 3);
        m.add_objective(rng() % 2 ? Sense::minimize : Sense::maximize, obj, Rule::rank_sum);
    }
    return m;
}

// Solver exactness against naive search.
Outcome criterion9() {
    Outcome out;
    std::mt19937_64 rng(909);
    int feasible = 0, max_bits = 0;
    for (int k = 0; k < 100; ++k) {
        int bits = 0;
        const LinearModel m = random_model(rng, bits);
        max_bits = std::max(max_bits, bits);
        std::vector<int> all(static_cast<std::size_t>(m.num_vars()));
        for (int v = 0; v < m.num_vars(); ++v) all[static_cast<std::size_t>(v)] = v;
        const test::NaiveScan naive = test::naive_scan(m, all);
        const Enumeration en = enumerate_feasible(m, all, 1u << 24);
        const std::set<std::vector<std::int64_t>> got(en.rows.begin(), en.rows.end());
        if (en.truncated || got != naive.projections) out.fail("model " + std::to_string(k) + ": enumeration differs");
        for (const auto& row : en.rows)
            if (m.first_violation(row) != -1) out.fail("model " + std::to_string(k) + ": enumerated row violates the model");
        const SolveResult r = solve(m);
        if (naive.feasible == 0) {
            if (r.status != SolveStatus::infeasible) out.fail("model " + std::to_string(k) + ": infeasibility missed");
            continue;
        }
        ++feasible;
        if (!r.has_assignment() || m.first_violation(r.assignment) != -1) {
            out.fail("model " + std::to_string(k) + ": solver assignment invalid");
            continue;
        }
        if (!m.objectives().empty()) {
            if (r.status != SolveStatus::optimal) out.fail("model " + std::to_string(k) + ": not optimal");
            if (test::objective_vector(m, r.assignment) != *naive.best)
                out.fail("model " + std::to_string(k) + ": optimum differs from exhaustive search");
        }
    }
    out.detail = "100 models (" + std::to_string(feasible) + " feasible, up to " + std::to_string(max_bits) + " domain bits)";
    return out;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9};
    const auto start = Clock::now();
    int failed = 0;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[c]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const std::string time = fmt(seconds_since(t0)) + " s";
        if (o.pass) {
            std::printf("criterion %zu PASS (%s; %s)\n", c + 1, o.detail.c_str(), time.c_str());
        } else {
            ++failed;
            std::printf("criterion %zu FAIL (%s; %s)\n", c + 1, o.failure.c_str(), time.c_str());
        }
        std::fflush(stdout);
    }
    const double total = seconds_since(start);
    std::printf("total %s s, %d of %zu criteria failed\n", fmt(total).c_str(), failed, criteria.size());
    return failed == 0 && total < 600.0 ? 0 : 1;
}
