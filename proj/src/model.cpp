#include "admit/model.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace admit {

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::applicant_feasible: return "applicant_feasible";
        case Rule::college_feasible: return "college_feasible";
        case Rule::stable: return "stable";
        case Rule::stable_ties: return "stable_ties";
        case Rule::score_stable_college: return "score_stable_college";
        case Rule::score_stable_applicant: return "score_stable_applicant";
        case Rule::score_stable_filled1: return "score_stable_filled1";
        case Rule::score_stable_filled2: return "score_stable_filled2";
        case Rule::min_score_limits: return "min_score_limits";
        case Rule::zero: return "zero";
        case Rule::desires: return "desires";
        case Rule::deserves: return "deserves";
        case Rule::stable_no_objective: return "stable_no_objective";
        case Rule::lower_feasible: return "lower_feasible";
        case Rule::lower_stable1: return "lower_stable1";
        case Rule::lower_stable2: return "lower_stable2";
        case Rule::common_lower_feasible: return "common_lower_feasible";
        case Rule::lower_feasible_set: return "lower_feasible_set";
        case Rule::common_college_feasible: return "common_college_feasible";
        case Rule::common_score_stable_college: return "common_score_stable_college";
        case Rule::common_score_stable_applicant: return "common_score_stable_applicant";
        case Rule::common_score_stable_exception: return "common_score_stable_exception";
        case Rule::common_score_stable_filled1: return "common_score_stable_filled1";
        case Rule::common_score_stable_filled2: return "common_score_stable_filled2";
        case Rule::paired_applicant_feasible: return "paired_applicant_feasible";
        case Rule::paired_college_feasible: return "paired_college_feasible";
        case Rule::simple_score_stable_college: return "simple_score_stable_college";
        case Rule::simple_score_stable_applicant: return "simple_score_stable_applicant";
        case Rule::paired_score_stable_college1: return "paired_score_stable_college1";
        case Rule::paired_score_stable_college2: return "paired_score_stable_college2";
        case Rule::paired_score_stable_applicant1: return "paired_score_stable_applicant1";
        case Rule::paired_score_stable_applicant2: return "paired_score_stable_applicant2";
        case Rule::paired_score_stable_filled1: return "paired_score_stable_filled1";
        case Rule::paired_score_stable_filled2: return "paired_score_stable_filled2";
        case Rule::lower_score_stable_applicant: return "lower_score_stable_applicant";
        case Rule::common_lower_score_stable_applicant: return "common_lower_score_stable_applicant";
        case Rule::rank_sum: return "rank_sum";
        case Rule::matched_count: return "matched_count";
        case Rule::fixed_objective: return "fixed_objective";
    }
    return "unknown";
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in linear expression");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in linear expression");
    return r;
}

}  // namespace

LinearExpr& LinearExpr::add(int v, std::int64_t coef) {
    auto& c = terms_[v];
    c = checked_add(c, coef);
    if (c == 0) terms_.erase(v);
    return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
    for (auto [v, c] : other.terms_) add(v, c);
    constant_ = checked_add(constant_, other.constant_);
    return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
    for (auto [v, c] : other.terms_) add(v, -c);
    constant_ = checked_add(constant_, -other.constant_);
    return *this;
}

LinearExpr& LinearExpr::operator*=(std::int64_t k) {
    if (k == 0) {
        terms_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [v, c] : terms_) c = checked_mul(c, k);
    constant_ = checked_mul(constant_, k);
    return *this;
}

int LinearModel::add_var(std::string var_name, std::int64_t lower, std::int64_t upper, VarRole role) {
    if (lower > upper) throw std::invalid_argument("variable '" + var_name + "' has empty domain");
    if (by_name_.count(var_name)) throw std::invalid_argument("duplicate variable '" + var_name + "'");
    const int id = num_vars();
    by_name_.emplace(var_name, id);
    vars_.push_back({std::move(var_name), lower, upper, role});
    return id;
}

void LinearModel::add(const LinearExpr& lhs, Relation rel, const LinearExpr& rhs, Rule rule, std::string label) {
    LinearExpr diff = lhs - rhs;
    Constraint c;
    for (auto [v, coef] : diff.terms()) {
        if (v < 0 || v >= num_vars()) throw std::invalid_argument("constraint references undeclared variable");
        c.terms.push_back({v, coef});
    }
    c.relation = rel;
    c.rhs = -diff.constant();
    c.rule = rule;
    c.label = std::move(label);
    cons_.push_back(std::move(c));
}

void LinearModel::add_objective(Sense sense, const LinearExpr& expr, Rule rule) {
    Objective o;
    o.sense = sense;
    o.rule = rule;
    for (auto [v, coef] : expr.terms()) o.terms.push_back({v, coef});
    objs_.push_back(std::move(o));
}

int LinearModel::find_var(std::string_view var_name) const {
    auto it = by_name_.find(var_name);
    return it == by_name_.end() ? -1 : it->second;
}

void LinearModel::fix(int var, std::int64_t lower, std::int64_t upper) {
    auto& v = vars_.at(static_cast<std::size_t>(var));
    v.lower = std::max(v.lower, lower);
    v.upper = std::min(v.upper, upper);
}

std::vector<int> LinearModel::vars_with_role(Role role) const {
    std::vector<int> out;
    for (int v = 0; v < num_vars(); ++v)
        if (vars_[static_cast<std::size_t>(v)].role.role == role) out.push_back(v);
    return out;
}

std::int64_t LinearModel::evaluate(const std::vector<Term>& terms, const std::vector<std::int64_t>& values) const {
    std::int64_t sum = 0;
    for (const Term& t : terms) sum = checked_add(sum, checked_mul(t.coef, values[static_cast<std::size_t>(t.var)]));
    return sum;
}

int LinearModel::first_violation(const std::vector<std::int64_t>& values) const {
    if (values.size() != vars_.size()) return -2;
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (values[v] < vars_[v].lower || values[v] > vars_[v].upper) return -2;
    for (std::size_t k = 0; k < cons_.size(); ++k) {
        const Constraint& c = cons_[k];
        const std::int64_t lhs = evaluate(c.terms, values);
        const bool ok = c.relation == Relation::le ? lhs <= c.rhs : c.relation == Relation::ge ? lhs >= c.rhs : lhs == c.rhs;
        if (!ok) return static_cast<int>(k);
    }
    return -1;
}

namespace {

std::string lp_name(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') out += ch;
        else if (ch == '(' || ch == ',' || ch == '+' || ch == '[') out += '_';
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out = "v" + out;
    return out;
}

void write_terms(const LinearModel& model, const std::vector<Term>& terms, std::ostream& out) {
    if (terms.empty()) {
        out << "0 " << lp_name(model.variables().empty() ? "none" : model.variables().front().name);
        return;
    }
    bool first = true;
    for (const Term& t : terms) {
        const auto& name = model.variables()[static_cast<std::size_t>(t.var)].name;
        if (t.coef < 0) out << (first ? "- " : " - ");
        else if (!first) out << " + ";
        const std::int64_t a = t.coef < 0 ? -t.coef : t.coef;
        if (a != 1) out << a << ' ';
        out << lp_name(name);
        first = false;
    }
}

}  // namespace

void write_lp(const LinearModel& model, std::ostream& out) {
    out << "\\ model: " << model.name << '\n';
    if (model.objectives().size() > 1) out << "\\ lexicographic objectives; only the first is stated below\n";
    if (model.objectives().empty()) {
        out << "Minimize\n obj: 0 " << (model.variables().empty() ? "none" : lp_name(model.variables().front().name)) << '\n';
    } else {
        const Objective& o = model.objectives().front();
        out << (o.sense == Sense::minimize ? "Minimize" : "Maximize") << "\n obj: ";
        write_terms(model, o.terms, out);
        out << " \\ " << to_string(o.rule) << '\n';
    }
    out << "Subject To\n";
    for (std::size_t k = 0; k < model.constraints().size(); ++k) {
        const Constraint& c = model.constraints()[k];
        out << " r" << k << '_' << lp_name(c.label) << ": ";
        write_terms(model, c.terms, out);
        out << (c.relation == Relation::le ? " <= " : c.relation == Relation::ge ? " >= " : " = ") << c.rhs;
        out << " \\ " << to_string(c.rule) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : model.variables()) out << ' ' << v.lower << " <= " << lp_name(v.name) << " <= " << v.upper << '\n';
    out << "Generals\n";
    for (const auto& v : model.variables())
        if (!(v.lower >= 0 && v.upper <= 1)) out << ' ' << lp_name(v.name) << '\n';
    out << "Binaries\n";
    for (const auto& v : model.variables())
        if (v.lower >= 0 && v.upper <= 1) out << ' ' << lp_name(v.name) << '\n';
    out << "End\n";
}

}  // namespace admit
