#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace admit {

/// Names the formulation rule a constraint (or objective) was generated from.
enum class Rule {
    applicant_feasible,
    college_feasible,
    stable,
    stable_ties,
    score_stable_college,
    score_stable_applicant,
    score_stable_filled1,
    score_stable_filled2,
    min_score_limits,
    zero,
    desires,
    deserves,
    stable_no_objective,
    lower_feasible,
    lower_stable1,
    lower_stable2,
    common_lower_feasible,
    lower_feasible_set,
    common_college_feasible,
    common_score_stable_college,
    common_score_stable_applicant,
    common_score_stable_exception,
    common_score_stable_filled1,
    common_score_stable_filled2,
    paired_applicant_feasible,
    paired_college_feasible,
    simple_score_stable_college,
    simple_score_stable_applicant,
    paired_score_stable_college1,
    paired_score_stable_college2,
    paired_score_stable_applicant1,
    paired_score_stable_applicant2,
    paired_score_stable_filled1,
    paired_score_stable_filled2,
    lower_score_stable_applicant,
    common_lower_score_stable_applicant,
    rank_sum,
    matched_count,
    fixed_objective,
};

std::string_view to_string(Rule rule);

/// What a variable means in terms of the market it was built from.
enum class Role {
    assignment,     // x_e, index = application
    limit,          // t_j, index = college
    set_limit,      // t_p, index = common-quota set
    filled,         // f_j
    set_filled,     // f_p
    positive,       // y_j
    desire,         // d_ij, index = application
    open,           // o_j
    group_open,     // o_p, index = lower group
    escape,         // y_i^p, index = applicant, aux = set (-1 - j for singleton {c_j})
    pair_escape,    // y_i^(jk), index = application
    other,
};

struct VarRole {
    Role role = Role::other;
    int index = -1;
    int aux = 0;
};

struct Variable {
    std::string name;
    std::int64_t lower = 0;
    std::int64_t upper = 1;
    VarRole role;
};

struct Term {
    int var = 0;
    std::int64_t coef = 0;
};

/// Affine integer expression over model variables.
class LinearExpr {
public:
    LinearExpr() = default;
    LinearExpr(std::int64_t constant) : constant_(constant) {}  // NOLINT(implicit)

    static LinearExpr var(int v, std::int64_t coef = 1) {
        LinearExpr e;
        e.add(v, coef);
        return e;
    }

    LinearExpr& add(int v, std::int64_t coef);
    LinearExpr& operator+=(const LinearExpr& other);
    LinearExpr& operator-=(const LinearExpr& other);
    LinearExpr& operator*=(std::int64_t k);

    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(LinearExpr a, std::int64_t k) { return a *= k; }
    friend LinearExpr operator*(std::int64_t k, LinearExpr a) { return a *= k; }

    const std::map<int, std::int64_t>& terms() const { return terms_; }
    std::int64_t constant() const { return constant_; }

private:
    std::map<int, std::int64_t> terms_;
    std::int64_t constant_ = 0;
};

enum class Relation { le, eq, ge };

/// sum(terms) <relation> rhs, with every term coefficient non-zero.
struct Constraint {
    std::vector<Term> terms;
    Relation relation = Relation::le;
    std::int64_t rhs = 0;
    Rule rule = Rule::applicant_feasible;
    std::string label;  // e.g. "college_feasible(c1)"
};

enum class Sense { minimize, maximize };

struct Objective {
    Sense sense = Sense::minimize;
    std::vector<Term> terms;
    Rule rule = Rule::rank_sum;
};

/// Bounded-integer linear model. More than one objective means a
/// lexicographic order, most important first.
class LinearModel {
public:
    std::string name;
    int num_applicants = 0;
    int num_colleges = 0;
    int num_sets = 0;
    int num_groups = 0;
    int num_applications = 0;

    int add_var(std::string var_name, std::int64_t lower, std::int64_t upper, VarRole role = {});
    int add_binary(std::string var_name, VarRole role = {}) { return add_var(std::move(var_name), 0, 1, role); }

    /// Adds lhs <rel> rhs after moving everything to canonical form.
    void add(const LinearExpr& lhs, Relation rel, const LinearExpr& rhs, Rule rule, std::string label);
    void add_objective(Sense sense, const LinearExpr& expr, Rule rule);

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    const std::vector<Objective>& objectives() const { return objs_; }
    std::vector<Objective>& objectives() { return objs_; }

    int num_vars() const { return static_cast<int>(vars_.size()); }
    int find_var(std::string_view var_name) const;  // -1 when absent

    /// Tightens the bounds of one variable (used to inject fixings).
    void fix(int var, std::int64_t lower, std::int64_t upper);

    /// Variables with the given role, in declaration order.
    std::vector<int> vars_with_role(Role role) const;

    /// Index of the first constraint the assignment violates, or -1. Bounds
    /// violations are reported as -2.
    int first_violation(const std::vector<std::int64_t>& values) const;

    std::int64_t evaluate(const std::vector<Term>& terms, const std::vector<std::int64_t>& values) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    std::vector<Objective> objs_;
    std::map<std::string, int, std::less<>> by_name_;
};

/// Writes the model in CPLEX LP syntax with one constraint per line and the
/// generating rule as a trailing comment.
void write_lp(const LinearModel& model, std::ostream& out);

}  // namespace admit
