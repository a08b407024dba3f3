#include "admit/builders.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace admit {

std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::none: return "none";
        case ObjectiveKind::applicant_optimal: return "applicant-optimal";
        case ObjectiveKind::applicant_pessimal: return "applicant-pessimal";
        case ObjectiveKind::min_score_limits: return "min-score-limits";
        case ObjectiveKind::lex_matched_then_limits: return "lex-matched-then-limits";
    }
    return "unknown";
}

ObjectiveKind parse_objective(std::string_view name) {
    for (ObjectiveKind k : {ObjectiveKind::none, ObjectiveKind::applicant_optimal, ObjectiveKind::applicant_pessimal,
                            ObjectiveKind::min_score_limits, ObjectiveKind::lex_matched_then_limits})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(ScoreLimitMode mode) {
    switch (mode) {
        case ScoreLimitMode::strict: return "strict";
        case ScoreLimitMode::ties_min: return "ties-min";
        case ScoreLimitMode::ties_full: return "ties-full";
    }
    return "unknown";
}

ScoreLimitMode parse_mode(std::string_view name) {
    if (name == "strict") return ScoreLimitMode::strict;
    if (name == "ties-min" || name == "ties_min") return ScoreLimitMode::ties_min;
    if (name == "ties-full" || name == "ties_full") return ScoreLimitMode::ties_full;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

namespace {

using E = LinearExpr;

void forbid_paired(const Instance& inst, const char* model) {
    if (inst.has_paired()) throw PreconditionError(std::string(model) + ": paired applications are not supported");
}
void forbid_common(const Instance& inst, const char* model) {
    if (!inst.common_quotas.empty()) throw PreconditionError(std::string(model) + ": common quotas are not supported");
}
void forbid_lower(const Instance& inst, const char* model) {
    if (inst.has_lower_quotas()) throw PreconditionError(std::string(model) + ": lower quotas are not supported");
}
void forbid_ties(const Instance& inst, const char* model) {
    if (inst.has_ties()) throw PreconditionError(std::string(model) + ": ties detected");
}

/// Shared state of the builders: the instance, the model under construction
/// and the variable indices created so far.
class Builder {
public:
    Builder(const Instance& inst, std::string name) : inst_(inst), big_(inst.max_score + 1) {
        model_.name = std::move(name);
        model_.num_applicants = inst.num_applicants();
        model_.num_colleges = inst.num_colleges();
        model_.num_sets = static_cast<int>(inst.common_quotas.size());
        model_.num_groups = static_cast<int>(inst.lower_groups.size());
        model_.num_applications = inst.num_applications();
        for (int e = 0; e < inst.num_applications(); ++e) {
            const Application& a = app(e);
            std::string target = a.paired() ? cid(a.college) + "+" + cid(a.second) : cid(a.college);
            x_.push_back(model_.add_binary("x(" + aid(a.applicant) + "," + target + ")", {Role::assignment, e, a.applicant}));
        }
    }

    LinearModel take() { return std::move(model_); }

    const Application& app(int e) const { return inst_.applications[static_cast<std::size_t>(e)]; }
    const std::string& cid(int j) const { return inst_.colleges[static_cast<std::size_t>(j)].id; }
    const std::string& aid(int i) const { return inst_.applicants[static_cast<std::size_t>(i)]; }
    int upper(int j) const { return inst_.colleges[static_cast<std::size_t>(j)].upper; }
    int lower(int j) const { return inst_.colleges[static_cast<std::size_t>(j)].lower; }
    std::string tag(Rule r, const std::string& who) const { return std::string(to_string(r)) + "(" + who + ")"; }
    std::string tag(Rule r, int e) const { return tag(r, describe(inst_, e)); }

    E x(int e) const { return E::var(x_[static_cast<std::size_t>(e)]); }

    /// Sum of x over the applicant's entries ranked at or above e (strictly
    /// above when `strict`).
    E prefix(int e, bool strict = false) const {
        const int i = app(e).applicant;
        const int pos = inst_.position(e);
        E sum;
        for (int k : inst_.list(i)) {
            const int pk = inst_.position(k);
            if (pk < pos || (!strict && pk == pos)) sum += x(k);
        }
        return sum;
    }

    /// Seats taken at college j; `simple_only` skips paired entries.
    E intake(int j, bool simple_only = false) const {
        E sum;
        for (int e : inst_.applications_to(j))
            if (!simple_only || !app(e).paired()) sum += x(e);
        return sum;
    }

    void applicant_feasible(Rule rule = Rule::applicant_feasible) {
        for (int i = 0; i < inst_.num_applicants(); ++i) {
            E sum;
            for (int e : inst_.list(i)) sum += x(e);
            model_.add(sum, Relation::le, 1, rule, tag(rule, aid(i)));
        }
    }

    void college_feasible(Rule rule = Rule::college_feasible) {
        for (int j = 0; j < inst_.num_colleges(); ++j) model_.add(intake(j), Relation::le, upper(j), rule, tag(rule, cid(j)));
    }

    /// Stability rows over matching variables only; `open` scales the
    /// right-hand side by o_j.
    void pairwise_stability(Rule rule, bool weak, bool open) {
        for (int e = 0; e < inst_.num_applications(); ++e) {
            const Application& a = app(e);
            const int j = a.college;
            E lhs = prefix(e) * upper(j);
            for (int h : inst_.applications_to(j)) {
                if (app(h).applicant == a.applicant) continue;
                const int s = app(h).score_at(j);
                if (weak ? s >= a.score : s > a.score) lhs += x(h);
            }
            E rhs = open ? E::var(o(j), upper(j)) : E(upper(j));
            model_.add(lhs, Relation::ge, rhs, rule, tag(rule, e));
        }
    }

    void add_limits() {
        for (int j = 0; j < inst_.num_colleges(); ++j)
            t_.push_back(model_.add_var("t(" + cid(j) + ")", 0, big_, {Role::limit, j, 0}));
    }
    void add_set_limits() {
        for (std::size_t p = 0; p < inst_.common_quotas.size(); ++p)
            tp_.push_back(model_.add_var("tp(" + inst_.common_quotas[p].id + ")", 0, big_, {Role::set_limit, static_cast<int>(p), 0}));
    }
    E t(int j) const { return E::var(t_[static_cast<std::size_t>(j)]); }
    E tp(int p) const { return E::var(tp_[static_cast<std::size_t>(p)]); }

    /// t <= (1 - x)(s+1) + score
    void admitted_meets(const E& limit, const E& xe, int score, Rule rule, const std::string& label) {
        model_.add(limit, Relation::le, (E(1) - xe) * big_ + E(score), rule, label);
    }

    /// score + 1 <= t + slack (s+1)
    void rejected_misses(const E& limit, const E& slack, int score, Rule rule, const std::string& label) {
        model_.add(E(score + 1), Relation::le, limit + slack * big_, rule, label);
    }

    void score_linking(Rule college_rule, Rule applicant_rule, bool relax_closed) {
        for (int e = 0; e < inst_.num_applications(); ++e) {
            const Application& a = app(e);
            admitted_meets(t(a.college), x(e), a.score, college_rule, tag(college_rule, e));
            E slack = prefix(e);
            if (relax_closed) slack += E(1) - E::var(o(a.college));
            rejected_misses(t(a.college), slack, a.score, applicant_rule, tag(applicant_rule, e));
        }
    }

    /// f_j u_j <= intake, t_j <= f_j (s+1)
    void filled(const E& seats, int quota, const E& limit, Rule rule1, Rule rule2, const std::string& who, VarRole role,
                const std::string& fname) {
        const int f = model_.add_binary(fname, role);
        model_.add(E::var(f, quota), Relation::le, seats, rule1, tag(rule1, who));
        model_.add(limit, Relation::le, E::var(f, big_), rule2, tag(rule2, who));
    }

    void college_filled(Rule rule1, Rule rule2) {
        for (int j = 0; j < inst_.num_colleges(); ++j)
            filled(intake(j), upper(j), t(j), rule1, rule2, cid(j), {Role::filled, j, 0}, "f(" + cid(j) + ")");
    }

    void witnesses() {
        std::vector<int> y, d;
        for (int j = 0; j < inst_.num_colleges(); ++j) y.push_back(model_.add_binary("y(" + cid(j) + ")", {Role::positive, j, 0}));
        for (int e = 0; e < inst_.num_applications(); ++e) {
            const Application& a = app(e);
            d.push_back(model_.add_binary("d(" + aid(a.applicant) + "," + cid(a.college) + ")", {Role::desire, e, a.applicant}));
        }
        for (int j = 0; j < inst_.num_colleges(); ++j)
            model_.add(t(j), Relation::le, E::var(y[static_cast<std::size_t>(j)], big_), Rule::zero, tag(Rule::zero, cid(j)));
        const int m = inst_.num_colleges();
        for (int e = 0; e < inst_.num_applications(); ++e) {
            const Application& a = app(e);
            E sum;
            for (int k : inst_.list(a.applicant))
                if (inst_.position(k) >= inst_.position(e)) sum += E::var(d[static_cast<std::size_t>(k)]);
            model_.add(sum, Relation::le, (E(1) - x(e)) * m, Rule::desires, tag(Rule::desires, e));
            model_.add(t(a.college) - E(1), Relation::le, (E(1) - E::var(d[static_cast<std::size_t>(e)])) * inst_.max_score + E(a.score),
                       Rule::deserves, tag(Rule::deserves, e));
        }
        for (int j = 0; j < m; ++j) {
            const int u = upper(j);
            E lhs = (E(1) - E::var(y[static_cast<std::size_t>(j)])) * (u + 1);
            for (int e : inst_.applications_to(j)) lhs += x(e) + E::var(d[static_cast<std::size_t>(e)]);
            model_.add(lhs, Relation::ge, u + 1, Rule::stable_no_objective, tag(Rule::stable_no_objective, cid(j)));
        }
    }

    void add_open() {
        for (int j = 0; j < inst_.num_colleges(); ++j) o_.push_back(model_.add_binary("o(" + cid(j) + ")", {Role::open, j, 0}));
    }
    int o(int j) const { return o_[static_cast<std::size_t>(j)]; }

    void lower_feasible() {
        for (int j = 0; j < inst_.num_colleges(); ++j) {
            model_.add(E::var(o(j), lower(j)), Relation::le, intake(j), Rule::lower_feasible, tag(Rule::lower_feasible, cid(j) + ",lower"));
            model_.add(intake(j), Relation::le, E::var(o(j), upper(j)), Rule::lower_feasible, tag(Rule::lower_feasible, cid(j) + ",upper"));
        }
    }

    std::vector<char> group_members() const {
        std::vector<char> in(inst_.colleges.size(), 0);
        for (const auto& g : inst_.lower_groups)
            for (int j : g.members) in[static_cast<std::size_t>(j)] = 1;
        return in;
    }

    void groups() {
        for (std::size_t p = 0; p < inst_.lower_groups.size(); ++p) {
            const auto& g = inst_.lower_groups[p];
            const int op = model_.add_binary("op(" + g.id + ")", {Role::group_open, static_cast<int>(p), 0});
            const int np = static_cast<int>(g.members.size());
            E opened, seats;
            for (int j : g.members) {
                opened += E::var(o(j));
                seats += intake(j);
            }
            model_.add(E::var(op, np), Relation::le, opened, Rule::common_lower_feasible, tag(Rule::common_lower_feasible, g.id + ",lower"));
            model_.add(opened, Relation::le, E::var(op, np), Rule::common_lower_feasible, tag(Rule::common_lower_feasible, g.id + ",upper"));
            model_.add(E::var(op, g.lower), Relation::le, seats, Rule::lower_feasible_set, tag(Rule::lower_feasible_set, g.id));
        }
    }

    /// Blocking-group rows for closed colleges outside every lower group.
    void group_stability() {
        const auto in_group = group_members();
        const int n = inst_.num_applicants();
        for (int j = 0; j < inst_.num_colleges(); ++j) {
            if (in_group[static_cast<std::size_t>(j)]) continue;
            E lhs;
            for (int e : inst_.applications_to(j)) lhs += E(1) - prefix(e, true);
            E rhs = (E(1) - E::var(o(j))) * (lower(j) - 1) + E::var(o(j), n);
            model_.add(lhs, Relation::le, rhs, Rule::lower_stable2, tag(Rule::lower_stable2, cid(j)));
        }
    }

    /// Index of the set in the unified list: singletons first (one per
    /// college), then explicit quota sets.
    struct SetRef {
        std::string name;  // for labels and variable names
        std::vector<int> members;
        int upper;
        int explicit_index;  // -1 for singletons
        int college;         // singleton college, -1 otherwise
    };

    std::vector<SetRef> all_sets() const {
        std::vector<SetRef> out;
        for (int j = 0; j < inst_.num_colleges(); ++j) out.push_back({"{" + cid(j) + "}", {j}, upper(j), -1, j});
        for (std::size_t p = 0; p < inst_.common_quotas.size(); ++p) {
            const auto& q = inst_.common_quotas[p];
            out.push_back({q.id, q.members, q.upper, static_cast<int>(p), -1});
        }
        return out;
    }

    E set_limit(const SetRef& s) const { return s.college >= 0 ? t(s.college) : tp(s.explicit_index); }

    void common_college_feasible() {
        for (const auto& q : inst_.common_quotas) {
            E seats;
            for (int j : q.members) seats += intake(j);
            model_.add(seats, Relation::le, q.upper, Rule::common_college_feasible, tag(Rule::common_college_feasible, q.id));
        }
    }

    /// Linking and rejection rows for every (application, containing set),
    /// with one escape variable per (applicant, set).
    void common_linking(bool relax_closed) {
        const auto sets = all_sets();
        std::map<std::pair<int, std::size_t>, int> escape;
        auto escape_var = [&](int i, std::size_t s) {
            auto [it, fresh] = escape.try_emplace({i, s}, -1);
            if (fresh) {
                const auto& set = sets[s];
                const int aux = set.college >= 0 ? -1 - set.college : set.explicit_index;
                it->second = model_.add_binary("y(" + aid(i) + "," + set.name + ")", {Role::escape, i, aux});
            }
            return it->second;
        };
        const Rule applicant_rule = relax_closed ? Rule::common_lower_score_stable_applicant : Rule::common_score_stable_applicant;
        for (int e = 0; e < inst_.num_applications(); ++e) {
            const Application& a = app(e);
            E escapes;
            for (std::size_t s = 0; s < sets.size(); ++s) {
                const auto& set = sets[s];
                if (std::find(set.members.begin(), set.members.end(), a.college) == set.members.end()) continue;
                const std::string who = describe(inst_, e) + "," + set.name;
                admitted_meets(set_limit(set), x(e), a.score, Rule::common_score_stable_college, tag(Rule::common_score_stable_college, who));
                const int y = escape_var(a.applicant, s);
                E slack = prefix(e) + E::var(y);
                if (relax_closed) slack += E(1) - E::var(o(a.college));
                rejected_misses(set_limit(set), slack, a.score, applicant_rule, tag(applicant_rule, who));
                escapes += E::var(y);
            }
            model_.add(escapes, Relation::le, inst_.sets_containing(a.college) - 1, Rule::common_score_stable_exception,
                       tag(Rule::common_score_stable_exception, e));
        }
    }

    void common_filled() {
        for (const auto& set : all_sets()) {
            E seats;
            for (int j : set.members) seats += intake(j);
            const VarRole role = set.college >= 0 ? VarRole{Role::filled, set.college, 0} : VarRole{Role::set_filled, set.explicit_index, 0};
            const std::string fname = set.college >= 0 ? "f(" + cid(set.college) + ")" : "fp(" + set.name + ")";
            filled(seats, set.upper, set_limit(set), Rule::common_score_stable_filled1, Rule::common_score_stable_filled2, set.name,
                   role, fname);
        }
    }

    E limit_sum() const {
        E sum;
        for (int v : t_) sum += E::var(v);
        for (int v : tp_) sum += E::var(v);
        return sum;
    }

    E matched_sum() const {
        E sum;
        for (int v : x_) sum += E::var(v);
        return sum;
    }

    LinearModel& model() { return model_; }
    const Instance& inst() const { return inst_; }
    int big() const { return big_; }

private:
    const Instance& inst_;
    int big_;
    LinearModel model_;
    std::vector<int> x_, t_, tp_, o_;
};

LinearModel classical(const Instance& inst, bool ties, const char* name) {
    Builder b(inst, name);
    b.applicant_feasible();
    b.college_feasible();
    b.pairwise_stability(ties ? Rule::stable_ties : Rule::stable, ties, false);
    return b.take();
}

}  // namespace

void set_objective(LinearModel& model, const Instance& inst, ObjectiveKind kind) {
    model.objectives().clear();
    LinearExpr ranks, matched, limits;
    for (int v : model.vars_with_role(Role::assignment)) {
        const int e = model.variables()[static_cast<std::size_t>(v)].role.index;
        ranks.add(v, inst.applications[static_cast<std::size_t>(e)].rank);
        matched.add(v, 1);
    }
    for (int v : model.vars_with_role(Role::limit)) limits.add(v, 1);
    for (int v : model.vars_with_role(Role::set_limit)) limits.add(v, 1);
    const bool has_limits = !limits.terms().empty();
    switch (kind) {
        case ObjectiveKind::none: break;
        case ObjectiveKind::applicant_optimal:
        case ObjectiveKind::applicant_pessimal:
            model.add_objective(kind == ObjectiveKind::applicant_optimal ? Sense::minimize : Sense::maximize, ranks, Rule::rank_sum);
            if (has_limits) model.add_objective(Sense::minimize, limits, Rule::min_score_limits);
            break;
        case ObjectiveKind::min_score_limits: model.add_objective(Sense::minimize, limits, Rule::min_score_limits); break;
        case ObjectiveKind::lex_matched_then_limits:
            model.add_objective(Sense::maximize, matched, Rule::matched_count);
            if (has_limits) model.add_objective(Sense::minimize, limits, Rule::min_score_limits);
            break;
    }
}

LinearModel build_classical(const Instance& inst, const ClassicalOptions& opts) {
    forbid_paired(inst, "classical model");
    forbid_common(inst, "classical model");
    forbid_lower(inst, "classical model");
    if (!opts.ties) forbid_ties(inst, "classical model");
    LinearModel model = classical(inst, opts.ties, "classical");
    set_objective(model, inst, opts.objective);
    return model;
}

LinearModel build_scorelimits(const Instance& inst, ScoreLimitMode mode, ObjectiveKind objective) {
    forbid_paired(inst, "score-limit model");
    forbid_common(inst, "score-limit model");
    forbid_lower(inst, "score-limit model");
    if (mode == ScoreLimitMode::strict) forbid_ties(inst, "score-limit model (strict)");
    Builder b(inst, "scorelimits-" + std::string(to_string(mode)));
    b.add_limits();
    b.applicant_feasible();
    b.college_feasible();
    b.score_linking(Rule::score_stable_college, Rule::score_stable_applicant, false);
    if (mode == ScoreLimitMode::strict) b.college_filled(Rule::score_stable_filled1, Rule::score_stable_filled2);
    if (mode == ScoreLimitMode::ties_full) b.witnesses();
    LinearModel model = b.take();
    if (mode == ScoreLimitMode::ties_min) {
        // The minimum-limit objective is what makes these solutions stable, so
        // it stays first; rank objectives only order its optima.
        LinearModel ranked = model;
        set_objective(ranked, inst, objective == ObjectiveKind::applicant_optimal || objective == ObjectiveKind::applicant_pessimal
                                        ? objective
                                        : ObjectiveKind::none);
        set_objective(model, inst, ObjectiveKind::min_score_limits);
        if (!ranked.objectives().empty()) model.objectives().push_back(ranked.objectives().front());
    } else {
        set_objective(model, inst, objective);
    }
    return model;
}

LinearModel build_lower(const Instance& inst, ObjectiveKind objective) {
    forbid_paired(inst, "lower-quota model");
    forbid_common(inst, "lower-quota model");
    forbid_ties(inst, "lower-quota model");
    Builder b(inst, "lower");
    b.add_open();
    b.applicant_feasible();
    b.lower_feasible();
    b.groups();
    b.pairwise_stability(Rule::lower_stable1, false, true);
    b.group_stability();
    LinearModel model = b.take();
    set_objective(model, inst, objective);
    return model;
}

LinearModel build_common(const Instance& inst, ObjectiveKind objective) {
    forbid_paired(inst, "common-quota model");
    forbid_lower(inst, "common-quota model");
    forbid_ties(inst, "common-quota model");
    Builder b(inst, "common");
    b.add_limits();
    b.add_set_limits();
    b.applicant_feasible();
    b.college_feasible();
    b.common_college_feasible();
    b.common_linking(false);
    b.common_filled();
    LinearModel model = b.take();
    set_objective(model, inst, objective);
    return model;
}

LinearModel build_paired(const Instance& inst, ObjectiveKind objective) {
    forbid_common(inst, "paired model");
    forbid_lower(inst, "paired model");
    forbid_ties(inst, "paired model");
    Builder b(inst, "paired");
    b.add_limits();
    b.applicant_feasible(Rule::paired_applicant_feasible);
    b.college_feasible(Rule::paired_college_feasible);
    auto& model = b.model();
    for (int e = 0; e < inst.num_applications(); ++e) {
        const Application& a = b.app(e);
        const LinearExpr xe = b.x(e);
        if (!a.paired()) {
            b.admitted_meets(b.t(a.college), xe, a.score, Rule::simple_score_stable_college, b.tag(Rule::simple_score_stable_college, e));
            b.rejected_misses(b.t(a.college), b.prefix(e), a.score, Rule::simple_score_stable_applicant,
                              b.tag(Rule::simple_score_stable_applicant, e));
            continue;
        }
        const int y = model.add_binary("y(" + b.aid(a.applicant) + "," + b.cid(a.college) + "+" + b.cid(a.second) + ")",
                                       {Role::pair_escape, e, a.applicant});
        b.admitted_meets(b.t(a.college), xe, a.score, Rule::paired_score_stable_college1, b.tag(Rule::paired_score_stable_college1, e));
        b.admitted_meets(b.t(a.second), xe, a.second_score, Rule::paired_score_stable_college2,
                         b.tag(Rule::paired_score_stable_college2, e));
        b.rejected_misses(b.t(a.college), b.prefix(e) + LinearExpr::var(y), a.score, Rule::paired_score_stable_applicant1,
                          b.tag(Rule::paired_score_stable_applicant1, e));
        b.rejected_misses(b.t(a.second), b.prefix(e) + LinearExpr(1) - LinearExpr::var(y), a.second_score,
                          Rule::paired_score_stable_applicant2, b.tag(Rule::paired_score_stable_applicant2, e));
    }
    b.college_filled(Rule::paired_score_stable_filled1, Rule::paired_score_stable_filled2);
    LinearModel out = b.take();
    set_objective(out, inst, objective);
    return out;
}

LinearModel build_paired_via_common(const Instance& inst) {
    forbid_common(inst, "paired model");
    forbid_lower(inst, "paired model");
    forbid_ties(inst, "paired model");
    Builder b(inst, "paired-via-common");
    auto& model = b.model();
    const int m = inst.num_colleges();
    const int big = b.big();
    // Per original college: the singleton {c_j} (simple entries only) and the
    // set S_j of c_j plus every pair college containing it (all entries).
    // Each pair college also forms its own singleton set without a quota.
    std::vector<int> t_single, t_set;
    for (int j = 0; j < m; ++j) {
        t_single.push_back(model.add_var("t(" + b.cid(j) + ")", 0, big, {Role::limit, j, 0}));
        t_set.push_back(model.add_var("ts(" + b.cid(j) + ")", 0, big, {Role::other, j, 0}));
    }
    b.applicant_feasible();
    for (int j = 0; j < m; ++j) {
        model.add(b.intake(j, true), Relation::le, b.upper(j), Rule::college_feasible, b.tag(Rule::college_feasible, b.cid(j)));
        model.add(b.intake(j), Relation::le, b.upper(j), Rule::common_college_feasible, b.tag(Rule::common_college_feasible, "S(" + b.cid(j) + ")"));
    }
    std::map<std::pair<int, int>, int> escape;  // (applicant, 2j or 2j+1) -> y
    auto escape_var = [&](int i, int j, bool single) {
        auto [it, fresh] = escape.try_emplace({i, 2 * j + (single ? 0 : 1)}, -1);
        if (fresh) {
            const std::string set = single ? "{" + b.cid(j) + "}" : "S(" + b.cid(j) + ")";
            it->second = model.add_binary("y(" + b.aid(i) + "," + set + ")", {Role::escape, i, single ? -1 - j : j});
        }
        return LinearExpr::var(it->second);
    };
    for (int e = 0; e < inst.num_applications(); ++e) {
        const Application& a = b.app(e);
        const LinearExpr xe = b.x(e);
        // (limit, score, singleton?) of every set containing the target.
        struct Member {
            int college;
            bool single;
        };
        std::vector<Member> sets;
        if (!a.paired()) sets = {{a.college, true}, {a.college, false}};
        else sets = {{a.college, false}, {a.second, false}};
        LinearExpr escapes;
        for (const auto& s : sets) {
            const LinearExpr limit = LinearExpr::var(s.single ? t_single[static_cast<std::size_t>(s.college)] : t_set[static_cast<std::size_t>(s.college)]);
            const int score = a.score_at(s.college);
            const std::string who = describe(inst, e) + "," + (s.single ? "{" + b.cid(s.college) + "}" : "S(" + b.cid(s.college) + ")");
            b.admitted_meets(limit, xe, score, Rule::common_score_stable_college, b.tag(Rule::common_score_stable_college, who));
            const LinearExpr y = escape_var(a.applicant, s.college, s.single);
            b.rejected_misses(limit, b.prefix(e) + y, score, Rule::common_score_stable_applicant,
                              b.tag(Rule::common_score_stable_applicant, who));
            escapes += y;
        }
        if (a.paired()) {
            // The pair college's own singleton has no quota, never fills and
            // keeps limit 0, so only an admitted or lower entry may use it.
            const std::string who = describe(inst, e) + ",{" + b.cid(a.college) + "+" + b.cid(a.second) + "}";
            const int y = model.add_binary("y(" + b.aid(a.applicant) + ",{" + b.cid(a.college) + "+" + b.cid(a.second) + "})",
                                           {Role::pair_escape, e, a.applicant});
            b.rejected_misses(LinearExpr(0), b.prefix(e) + LinearExpr::var(y), std::min(a.score, a.second_score),
                              Rule::common_score_stable_applicant, b.tag(Rule::common_score_stable_applicant, who));
            escapes += LinearExpr::var(y);
        }
        model.add(escapes, Relation::le, static_cast<std::int64_t>(sets.size()) - (a.paired() ? 0 : 1),
                  Rule::common_score_stable_exception, b.tag(Rule::common_score_stable_exception, e));
    }
    for (int j = 0; j < m; ++j) {
        b.filled(b.intake(j, true), b.upper(j), LinearExpr::var(t_single[static_cast<std::size_t>(j)]), Rule::common_score_stable_filled1,
                 Rule::common_score_stable_filled2, "{" + b.cid(j) + "}", {Role::filled, j, 0}, "f(" + b.cid(j) + ")");
        b.filled(b.intake(j), b.upper(j), LinearExpr::var(t_set[static_cast<std::size_t>(j)]), Rule::common_score_stable_filled1,
                 Rule::common_score_stable_filled2, "S(" + b.cid(j) + ")", {Role::other, j, 1}, "fs(" + b.cid(j) + ")");
    }
    return b.take();
}

LinearModel build_combined(const Instance& inst, const CombinedPolicy& policy) {
    forbid_paired(inst, "combined model");
    if (!policy.ties) forbid_ties(inst, "combined model");
    if (!policy.lower) forbid_lower(inst, "combined model");
    if (!policy.common) forbid_common(inst, "combined model");
    if (policy.lower && policy.common && policy.group_stability == GroupStability::enforce)
        throw PreconditionError("combined model: lower and common quotas need group_stability = drop_with_lex_objective");
    if (policy.ties && policy.common && policy.closure == ClosureRule::witnesses)
        throw PreconditionError("combined model: the witness closure is only available without common quotas");

    if (!policy.ties && !policy.lower && !policy.common) {
        LinearModel model = classical(inst, false, "combined");
        if (policy.group_stability == GroupStability::drop_with_lex_objective)
            set_objective(model, inst, ObjectiveKind::lex_matched_then_limits);
        return model;
    }

    Builder b(inst, "combined");
    b.add_limits();
    if (policy.common) b.add_set_limits();
    if (policy.lower) b.add_open();
    b.applicant_feasible();
    if (policy.lower) {
        b.lower_feasible();
        b.groups();
    } else {
        b.college_feasible();
    }
    if (policy.common) {
        b.common_college_feasible();
        b.common_linking(policy.lower);
    } else {
        b.score_linking(Rule::score_stable_college, policy.lower ? Rule::lower_score_stable_applicant : Rule::score_stable_applicant,
                        policy.lower);
    }
    if (policy.lower && policy.group_stability == GroupStability::enforce) b.group_stability();
    bool min_limits = false;
    if (!policy.ties) {
        if (policy.common) b.common_filled();
        else b.college_filled(Rule::score_stable_filled1, Rule::score_stable_filled2);
    } else if (policy.closure == ClosureRule::witnesses) {
        b.witnesses();
    } else {
        min_limits = true;
    }
    LinearModel model = b.take();
    if (policy.group_stability == GroupStability::drop_with_lex_objective)
        set_objective(model, inst, ObjectiveKind::lex_matched_then_limits);
    else if (min_limits)
        set_objective(model, inst, ObjectiveKind::min_score_limits);
    return model;
}

std::vector<int> assignment_vars(const LinearModel& model) { return model.vars_with_role(Role::assignment); }

std::vector<int> limit_vars(const LinearModel& model) {
    std::vector<int> out(static_cast<std::size_t>(model.num_colleges), -1);
    for (int v : model.vars_with_role(Role::limit)) out[static_cast<std::size_t>(model.variables()[static_cast<std::size_t>(v)].role.index)] = v;
    if (std::find(out.begin(), out.end(), -1) != out.end()) return {};
    return out;
}

Solution extract_solution(const LinearModel& model, const std::vector<std::int64_t>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(model.num_vars()))
        throw AssignmentError("assignment incomplete: expected " + std::to_string(model.num_vars()) + " values, got " +
                              std::to_string(assignment.size()));
    const int k = model.first_violation(assignment);
    if (k == -2) {
        for (std::size_t v = 0; v < assignment.size(); ++v) {
            const auto& var = model.variables()[v];
            if (assignment[v] < var.lower || assignment[v] > var.upper)
                throw AssignmentError("bound violated: " + var.name + " = " + std::to_string(assignment[v]));
        }
    }
    if (k >= 0) throw AssignmentError("constraint violated: " + model.constraints()[static_cast<std::size_t>(k)].label);

    Solution sol;
    sol.matching.entry.assign(static_cast<std::size_t>(model.num_applicants), -1);
    auto sized = [](std::vector<int>& vec, int count) {
        if (vec.empty()) vec.assign(static_cast<std::size_t>(count), 0);
    };
    for (int v = 0; v < model.num_vars(); ++v) {
        const auto& var = model.variables()[static_cast<std::size_t>(v)];
        const std::int64_t value = assignment[static_cast<std::size_t>(v)];
        const auto idx = static_cast<std::size_t>(var.role.index);
        switch (var.role.role) {
            case Role::assignment:
                if (value == 1) sol.matching.entry[static_cast<std::size_t>(var.role.aux)] = var.role.index;
                break;
            case Role::limit:
                sized(sol.limits, model.num_colleges);
                sol.limits[idx] = static_cast<int>(value);
                break;
            case Role::set_limit:
                sized(sol.set_limits, model.num_sets);
                sol.set_limits[idx] = static_cast<int>(value);
                break;
            case Role::open:
                sized(sol.open, model.num_colleges);
                sol.open[idx] = static_cast<int>(value);
                break;
            case Role::group_open:
                sized(sol.group_open, model.num_groups);
                sol.group_open[idx] = static_cast<int>(value);
                break;
            default: sol.aux.emplace_back(var.name, value); break;
        }
    }
    return sol;
}

}  // namespace admit
