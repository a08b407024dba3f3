#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "support.hpp"

using namespace admit;

namespace {

std::set<Rule> rules_of(const LinearModel& m) {
    std::set<Rule> out;
    for (const auto& c : m.constraints()) out.insert(c.rule);
    return out;
}

std::set<std::vector<int>> limits_of(const LinearModel& m) { return test::ip_limit_vectors(m); }

std::vector<std::int64_t> assignment_by_name(const LinearModel& m, std::initializer_list<std::pair<const char*, int>> values) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(m.num_vars()), 0);
    for (const auto& [name, value] : values) {
        const int v = m.find_var(name);
        EXPECT_GE(v, 0) << name;
        if (v >= 0) out[static_cast<std::size_t>(v)] = value;
    }
    return out;
}

Instance strict_instance(std::uint64_t seed) {
    GenConfig cfg;
    cfg.applicants = 5;
    cfg.colleges = 3;
    cfg.max_score = 6;
    cfg.max_list = 3;
    cfg.seed = seed;
    return generate(cfg);
}

}  // namespace

TEST(Classical, I1SingleStableSolution) {
    const Instance inst = test::fixture("I1");
    const LinearModel m = build_classical(inst);
    EXPECT_EQ(m.num_vars(), 1);
    EXPECT_EQ(m.constraints().size(), 3u);
    EXPECT_EQ(rules_of(m), (std::set<Rule>{Rule::applicant_feasible, Rule::college_feasible, Rule::stable}));
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{0}}));
}

TEST(Classical, I2UniqueAssignment) {
    const Instance inst = test::fixture("I2");
    const LinearModel m = build_classical(inst);
    // Independent check: all four 0/1 assignments against the rows.
    const test::NaiveScan scan = test::naive_scan(m, {m.find_var("x(a1,c1)"), m.find_var("x(a2,c1)")});
    EXPECT_EQ(scan.projections, (std::set<std::vector<std::int64_t>>{{1, 0}}));
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{0, -1}}));
}

TEST(Classical, I3WeakTiesTwoSolutions) {
    const Instance inst = test::fixture("I3");
    const LinearModel m = build_classical(inst, {true, ObjectiveKind::none});
    EXPECT_EQ(rules_of(m).count(Rule::stable_ties), 1u);
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{0, -1}, {-1, 1}}));
    EXPECT_THROW(build_classical(inst), PreconditionError);
}

TEST(Classical, ConstraintCount) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = strict_instance(seed);
        const LinearModel m = build_classical(inst);
        EXPECT_EQ(m.constraints().size(),
                  static_cast<std::size_t>(inst.num_applicants() + inst.num_colleges() + inst.num_applications()));
    }
}

TEST(Classical, RejectsUnsupportedFeatures) {
    EXPECT_THROW(build_classical(test::fixture("I4")), PreconditionError);
    EXPECT_THROW(build_classical(test::fixture("I7")), PreconditionError);
    EXPECT_THROW(build_classical(test::fixture("nested_common")), PreconditionError);
}

TEST(ScoreLimits, StrictCountAndTags) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = strict_instance(seed);
        const LinearModel m = build_scorelimits(inst, ScoreLimitMode::strict);
        EXPECT_EQ(m.constraints().size(), static_cast<std::size_t>(inst.num_applicants() + inst.num_colleges() +
                                                                   2 * inst.num_applications() + 2 * inst.num_colleges()));
    }
    const LinearModel strict = build_scorelimits(test::fixture("I2"), ScoreLimitMode::strict);
    EXPECT_EQ(rules_of(strict), (std::set<Rule>{Rule::applicant_feasible, Rule::college_feasible, Rule::score_stable_college,
                                                Rule::score_stable_applicant, Rule::score_stable_filled1,
                                                Rule::score_stable_filled2}));
    const LinearModel ties_min = build_scorelimits(test::fixture("I3"), ScoreLimitMode::ties_min);
    EXPECT_EQ(rules_of(ties_min), (std::set<Rule>{Rule::applicant_feasible, Rule::college_feasible,
                                                  Rule::score_stable_college, Rule::score_stable_applicant}));
    ASSERT_EQ(ties_min.objectives().size(), 1u);
    EXPECT_EQ(ties_min.objectives()[0].rule, Rule::min_score_limits);
    const LinearModel full = build_scorelimits(test::fixture("I3"), ScoreLimitMode::ties_full);
    EXPECT_EQ(rules_of(full), (std::set<Rule>{Rule::applicant_feasible, Rule::college_feasible, Rule::score_stable_college,
                                              Rule::score_stable_applicant, Rule::zero, Rule::desires, Rule::deserves,
                                              Rule::stable_no_objective}));
    for (const auto& v : full.variables())
        if (v.role.role == Role::limit) EXPECT_EQ(v.upper, test::fixture("I3").max_score + 1);
}

TEST(ScoreLimits, I1StrictLimits) {
    const Instance inst = test::fixture("I1");
    const LinearModel m = build_scorelimits(inst, ScoreLimitMode::strict);
    EXPECT_EQ(limits_of(m), (std::set<std::vector<int>>{{0}, {1}, {2}, {3}, {4}, {5}}));
    const SolveResult r = solve(build_scorelimits(inst, ScoreLimitMode::strict, ObjectiveKind::min_score_limits));
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(r.objective_values[0], 0);
}

TEST(ScoreLimits, I2StrictLimits) {
    const LinearModel m = build_scorelimits(test::fixture("I2"), ScoreLimitMode::strict);
    EXPECT_EQ(limits_of(m), (std::set<std::vector<int>>{{4}, {5}, {6}, {7}}));
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{0, -1}}));
}

TEST(ScoreLimits, I3TiesMinAndFull) {
    const Instance inst = test::fixture("I3");
    const SolveResult r = solve(build_scorelimits(inst, ScoreLimitMode::ties_min));
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(r.objective_values, std::vector<std::int64_t>{6});
    const Solution sol = extract_solution(build_scorelimits(inst, ScoreLimitMode::ties_min), r.assignment);
    EXPECT_EQ(sol.limits, std::vector<int>{6});
    EXPECT_EQ(sol.matching.entry, (std::vector<int>{-1, -1}));
    EXPECT_EQ(limits_of(build_scorelimits(inst, ScoreLimitMode::ties_full)), (std::set<std::vector<int>>{{6}}));
    EXPECT_THROW(build_scorelimits(inst, ScoreLimitMode::strict), PreconditionError);
}

TEST(ScoreLimits, ClassicalAndStrictShareMatchings) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const Instance inst = strict_instance(seed);
        EXPECT_EQ(test::ip_matchings(build_classical(inst)),
                  test::ip_matchings(build_scorelimits(inst, ScoreLimitMode::strict)))
            << "seed " << seed;
    }
}

TEST(Extract, I1StrictAssignment) {
    const LinearModel m = build_scorelimits(test::fixture("I1"), ScoreLimitMode::strict);
    const Solution sol = extract_solution(m, assignment_by_name(m, {{"x(a1,c1)", 1}, {"t(c1)", 0}, {"f(c1)", 1}}));
    EXPECT_EQ(sol.matching.entry, std::vector<int>{0});
    EXPECT_EQ(sol.limits, std::vector<int>{0});
}

TEST(Extract, I2TiesMinOptimum) {
    const LinearModel m = build_scorelimits(test::fixture("I2"), ScoreLimitMode::ties_min);
    const SolveResult r = solve(m);
    ASSERT_EQ(r.status, SolveStatus::optimal);
    const Solution sol = extract_solution(m, r.assignment);
    EXPECT_EQ(sol.matching.entry, (std::vector<int>{0, -1}));
    EXPECT_EQ(sol.limits, std::vector<int>{4});
}

TEST(Extract, Errors) {
    const LinearModel m = build_classical(test::fixture("I2"));
    try {
        extract_solution(m, assignment_by_name(m, {{"x(a1,c1)", 1}, {"x(a2,c1)", 1}}));
        FAIL() << "expected AssignmentError";
    } catch (const AssignmentError& e) {
        EXPECT_STREQ(e.what(), "constraint violated: college_feasible(c1)");
    }
    EXPECT_THROW(extract_solution(m, {1}), AssignmentError);
    EXPECT_THROW(extract_solution(m, {2, 0}), AssignmentError);
}

TEST(Lower, I4AndI4b) {
    const LinearModel m4 = build_lower(test::fixture("I4"));
    const Enumeration e4 = enumerate_feasible(m4, m4.vars_with_role(Role::open), 10);
    EXPECT_EQ(e4.rows, (std::vector<std::vector<std::int64_t>>{{0}}));
    EXPECT_EQ(test::ip_matchings(m4), (std::set<std::vector<int>>{{-1}}));

    const LinearModel m4b = build_lower(test::fixture("I4b"));
    const Enumeration e4b = enumerate_feasible(m4b, m4b.vars_with_role(Role::open), 10);
    EXPECT_EQ(e4b.rows, (std::vector<std::vector<std::int64_t>>{{1}}));
    EXPECT_EQ(test::ip_matchings(m4b), (std::set<std::vector<int>>{{0, 1}}));
    EXPECT_EQ(rules_of(m4b), (std::set<Rule>{Rule::applicant_feasible, Rule::lower_feasible, Rule::lower_stable1,
                                             Rule::lower_stable2}));
}

TEST(Lower, I5Infeasible) {
    EXPECT_EQ(solve(build_lower(test::fixture("I5"))).status, SolveStatus::infeasible);
}

TEST(Lower, GroupRows) {
    const Instance inst = parse_instance(R"({"max_score": 5,
        "colleges": [{"id": "c1", "upper": 2}, {"id": "c2", "upper": 2}],
        "applicants": [{"id": "a1", "list": [{"rank": 1, "college": "c1", "score": 3}]},
                       {"id": "a2", "list": [{"rank": 1, "college": "c2", "score": 4}]}],
        "lower_groups": [{"id": "G1", "members": ["c1", "c2"], "lower": 3}]})");
    const LinearModel m = build_lower(inst);
    const auto rules = rules_of(m);
    EXPECT_EQ(rules.count(Rule::common_lower_feasible), 1u);
    EXPECT_EQ(rules.count(Rule::lower_feasible_set), 1u);
    EXPECT_EQ(rules.count(Rule::lower_stable2), 0u);
    // Two applicants cannot meet the shared lower quota of 3, so the group closes.
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{-1, -1}}));
}

TEST(Common, SingletonSetReducesToStrict) {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        Instance inst = strict_instance(seed);
        inst.common_quotas.push_back({"Q1", {0}, inst.colleges[0].upper});
        inst.finalize();
        Instance plain = strict_instance(seed);
        EXPECT_EQ(test::ip_matchings(build_common(inst)),
                  test::ip_matchings(build_scorelimits(plain, ScoreLimitMode::strict)))
            << "seed " << seed;
    }
}

TEST(Common, NestedFixtureMatchesOracle) {
    const Instance inst = test::fixture("nested_common");
    const auto ip = test::ip_matchings(build_common(inst));
    EXPECT_FALSE(ip.empty());
    EXPECT_EQ(ip, test::oracle_matchings(inst, Variant::common));
    EXPECT_EQ(solve(build_common(test::fixture("I6"))).status, SolveStatus::infeasible);
}

TEST(Paired, UncontestedPair) {
    const Instance inst = parse_instance(R"({"max_score": 5,
        "colleges": [{"id": "c1", "upper": 1}, {"id": "c2", "upper": 1}],
        "applicants": [{"id": "a1", "list": [{"rank": 1, "pair": ["c1", "c2"], "scores": [5, 5]}]}]})");
    const LinearModel m = build_paired(inst);
    const Solution sol = extract_solution(m, assignment_by_name(m, {{"x(a1,c1+c2)", 1}, {"f(c1)", 1}, {"f(c2)", 1}}));
    EXPECT_EQ(sol.matching.entry, std::vector<int>{0});
    EXPECT_EQ(sol.limits, (std::vector<int>{0, 0}));
}

TEST(Paired, SimpleApplicantWinsContestedSeat) {
    const Instance inst = parse_instance(R"({"max_score": 9,
        "colleges": [{"id": "c1", "upper": 1}, {"id": "c2", "upper": 1}],
        "applicants": [{"id": "A", "list": [{"rank": 1, "pair": ["c1", "c2"], "scores": [3, 3]}]},
                       {"id": "B", "list": [{"rank": 1, "college": "c1", "score": 7}]}]})");
    const LinearModel m = build_paired(inst);
    EXPECT_EQ(test::ip_matchings(m), (std::set<std::vector<int>>{{-1, 1}}));
    const auto limits = limits_of(m);
    ASSERT_FALSE(limits.empty());
    for (const auto& t : limits) {
        EXPECT_GE(t[0], 4);
        EXPECT_EQ(t[1], 0);
    }
    // A's rejection is witnessed at c1 in every feasible assignment.
    const int y = m.find_var("y(A,c1+c2)");
    ASSERT_GE(y, 0);
    EXPECT_EQ(enumerate_feasible(m, std::vector<int>{y}, 10).rows, (std::vector<std::vector<std::int64_t>>{{0}}));
}

TEST(Paired, I7InfeasibleBothRoutes) {
    const Instance inst = test::fixture("I7");
    EXPECT_EQ(solve(build_paired(inst)).status, SolveStatus::infeasible);
    EXPECT_EQ(solve(build_paired_via_common(inst)).status, SolveStatus::infeasible);
}

TEST(Combined, AllFalseIsClassical) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = strict_instance(seed);
        const LinearModel a = build_combined(inst, {});
        const LinearModel b = build_classical(inst);
        ASSERT_EQ(a.constraints().size(), b.constraints().size());
        for (std::size_t k = 0; k < a.constraints().size(); ++k) {
            const auto& ca = a.constraints()[k];
            const auto& cb = b.constraints()[k];
            EXPECT_EQ(ca.relation, cb.relation);
            EXPECT_EQ(ca.rhs, cb.rhs);
            ASSERT_EQ(ca.terms.size(), cb.terms.size());
            for (std::size_t t = 0; t < ca.terms.size(); ++t) {
                EXPECT_EQ(ca.terms[t].var, cb.terms[t].var);
                EXPECT_EQ(ca.terms[t].coef, cb.terms[t].coef);
            }
        }
        EXPECT_TRUE(a.objectives().empty());
    }
}

TEST(Combined, TiesAndLowerOnI3) {
    CombinedPolicy p;
    p.ties = true;
    p.lower = true;
    const SolveResult r = solve(build_combined(test::fixture("I3"), p));
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(r.objective_values, std::vector<std::int64_t>{6});
}

TEST(Combined, TiesAndLowerOnI4) {
    const Instance inst = test::fixture("I4");
    CombinedPolicy p;
    p.ties = true;
    p.lower = true;
    const LinearModel m = build_combined(inst, p);
    const SolveResult r = solve(m);
    ASSERT_EQ(r.status, SolveStatus::optimal);
    const Solution sol = extract_solution(m, r.assignment);
    EXPECT_EQ(sol.open, std::vector<int>{0});
    EXPECT_TRUE(is_stable(inst, sol, Variant::lower));
}

TEST(Combined, DropWithLexOnI4b) {
    CombinedPolicy p;
    p.lower = true;
    p.group_stability = GroupStability::drop_with_lex_objective;
    const SolveResult r = solve_lex(build_combined(test::fixture("I4b"), p));
    ASSERT_EQ(r.status, SolveStatus::optimal);
    EXPECT_EQ(r.phase_optima, (std::vector<std::int64_t>{2, 0}));
}

TEST(Combined, IncoherentPolicies) {
    const Instance inst = parse_instance(R"({"max_score": 5,
        "colleges": [{"id": "c1", "upper": 1, "lower": 1}, {"id": "c2", "upper": 1}],
        "applicants": [{"id": "a1", "list": [{"rank": 1, "college": "c1", "score": 3}]}],
        "common_quotas": [{"id": "Q1", "members": ["c1", "c2"], "upper": 1}]})");
    CombinedPolicy p;
    p.lower = true;
    p.common = true;
    EXPECT_THROW(build_combined(inst, p), PreconditionError);
    p.group_stability = GroupStability::drop_with_lex_objective;
    EXPECT_NO_THROW(build_combined(inst, p));
    p.ties = true;
    p.closure = ClosureRule::witnesses;
    EXPECT_THROW(build_combined(inst, p), PreconditionError);
    EXPECT_THROW(build_combined(inst, {}), PreconditionError);
}

TEST(LpDump, OneRowPerConstraintWithRule) {
    const LinearModel m = build_scorelimits(test::fixture("I2"), ScoreLimitMode::strict);
    std::ostringstream out;
    write_lp(m, out);
    const std::string text = out.str();
    std::size_t rows = 0;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (line.rfind(" r", 0) == 0) ++rows;
    EXPECT_EQ(rows, m.constraints().size());
    EXPECT_NE(text.find("\\ score_stable_filled2"), std::string::npos);
    EXPECT_NE(text.find("Binaries"), std::string::npos);
}

TEST(Extract, SolutionsPassFeasibilityAudit) {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        GenConfig cfg;
        cfg.applicants = 5;
        cfg.colleges = 3;
        cfg.lower_probability = 0.5;
        cfg.max_score = 6;
        cfg.seed = seed;
        const Instance inst = generate(cfg);
        const LinearModel m = build_lower(inst);
        const SolveResult r = solve(m);
        if (!r.has_assignment()) continue;
        const Solution sol = extract_solution(m, r.assignment);
        EXPECT_EQ(check_feasibility(inst, sol).verdict, Verdict::stable) << "seed " << seed;
        EXPECT_TRUE(is_stable(inst, sol, Variant::lower)) << "seed " << seed;
    }
}
