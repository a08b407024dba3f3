#include "admit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "admit/algorithms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace admit {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::classical: return "classical";
        case Variant::weak_ties: return "weak_ties";
        case Variant::scorelimits_h: return "scorelimits_H";
        case Variant::lower: return "lower";
        case Variant::common: return "common";
        case Variant::paired: return "paired";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    for (Variant v : {Variant::classical, Variant::weak_ties, Variant::scorelimits_h, Variant::lower, Variant::common,
                      Variant::paired})
        if (to_string(v) == name) return v;
    if (name == "scorelimits_h" || name == "scorelimits-H" || name == "scorelimits") return Variant::scorelimits_h;
    if (name == "weak-ties") return Variant::weak_ties;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::quota_breach: return "quota_breach";
        case ViolationKind::blocking_pair: return "blocking_pair";
        case ViolationKind::blocking_group: return "blocking_group";
        case ViolationKind::reducible_score_limit: return "reducible_score_limit";
        case ViolationKind::unfilled_positive_limit: return "unfilled_positive_limit";
        case ViolationKind::common_quota_breach: return "common_quota_breach";
        case ViolationKind::paired_block: return "paired_block";
    }
    return "unknown";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

bool is_feasibility(ViolationKind k) {
    return k == ViolationKind::quota_breach || k == ViolationKind::common_quota_breach;
}

/// Runs one variant's definition over a solution. With `first_only` set it
/// stops at the first violation (used by the enumerators).
class Auditor {
public:
    Auditor(const Instance& inst, bool first_only) : inst_(inst), first_only_(first_only) {}

    StabilityReport run(const Solution& sol, Variant variant) {
        switch (variant) {
            case Variant::classical:
            case Variant::weak_ties: pairwise(sol, variant == Variant::weak_ties); break;
            case Variant::scorelimits_h: scorelimits(sol); break;
            case Variant::lower: lower(sol); break;
            case Variant::common: common(sol); break;
            case Variant::paired: paired(sol); break;
        }
        return finish();
    }

    StabilityReport feasibility(const Solution& sol) {
        shape(sol.matching);
        const auto intake = sol.matching.intake(inst_);
        upper_quotas(intake);
        set_quotas(intake);
        if (!sol.open.empty()) {
            if (sol.open.size() != inst_.colleges.size()) throw ShapeError("open flags do not match the college count");
            open_flags(intake, sol.open, groups_from(sol, sol.open));
        }
        return finish();
    }

private:
    const College& college(int j) const { return inst_.colleges[static_cast<std::size_t>(j)]; }
    const Application& app(int e) const { return inst_.applications[static_cast<std::size_t>(e)]; }
    const std::string& cid(int j) const { return college(j).id; }
    const std::string& aid(int i) const { return inst_.applicants[static_cast<std::size_t>(i)]; }

    bool done() const { return first_only_ && !report_.violations.empty(); }

    void add(ViolationKind kind, std::vector<std::string> entities, std::string why) {
        if (done()) return;
        report_.violations.push_back({kind, std::move(entities), std::move(why)});
    }

    StabilityReport finish() {
        report_.verdict = Verdict::stable;
        for (const auto& v : report_.violations) {
            if (is_feasibility(v.kind)) {
                report_.verdict = Verdict::infeasible;
                break;
            }
            report_.verdict = Verdict::unstable;
        }
        return std::move(report_);
    }

    void shape(const Matching& mt) const {
        if (mt.entry.size() != inst_.applicants.size()) throw ShapeError("matching does not cover every applicant");
        for (std::size_t i = 0; i < mt.entry.size(); ++i) {
            const int e = mt.entry[i];
            if (e < -1 || e >= inst_.num_applications() || (e >= 0 && app(e).applicant != static_cast<int>(i)))
                throw ShapeError("matching assigns applicant " + inst_.applicants[i] + " to a foreign application");
        }
    }

    void require_simple(const char* variant) const {
        if (inst_.has_paired()) throw ShapeError(std::string(variant) + " stability is undefined with paired applications");
    }

    void upper_quotas(const std::vector<int>& intake) {
        for (int j = 0; j < inst_.num_colleges() && !done(); ++j)
            if (intake[static_cast<std::size_t>(j)] > college(j).upper)
                add(ViolationKind::quota_breach, {cid(j)},
                    "intake " + std::to_string(intake[static_cast<std::size_t>(j)]) + " exceeds upper quota " +
                        std::to_string(college(j).upper));
    }

    void set_quotas(const std::vector<int>& intake) {
        for (const auto& q : inst_.common_quotas) {
            int total = 0;
            for (int j : q.members) total += intake[static_cast<std::size_t>(j)];
            if (total > q.upper)
                add(ViolationKind::common_quota_breach, {q.id},
                    "total intake " + std::to_string(total) + " exceeds common quota " + std::to_string(q.upper));
        }
    }

    /// Number of students admitted at college j with a score above `s`
    /// (or at least `s` when `weak`).
    int admitted_over(const Matching& mt, int j, int s, bool weak) const {
        int count = 0;
        for (int e : inst_.applications_to(j)) {
            if (mt.entry[static_cast<std::size_t>(app(e).applicant)] != e) continue;
            const int h = app(e).score_at(j);
            if (weak ? h >= s : h > s) ++count;
        }
        return count;
    }

    bool prefers(const Matching& mt, int e) const {
        return inst_.position(e) < mt.position(inst_, app(e).applicant);
    }

    void pairwise(const Solution& sol, bool weak) {
        require_simple(weak ? "weak" : "classical");
        const Matching& mt = sol.matching;
        shape(mt);
        const auto intake = mt.intake(inst_);
        upper_quotas(intake);
        for (int e = 0; e < inst_.num_applications() && !done(); ++e) {
            if (!prefers(mt, e)) continue;
            const Application& a = app(e);
            if (admitted_over(mt, a.college, a.score, weak) < college(a.college).upper)
                add(ViolationKind::blocking_pair, {aid(a.applicant), cid(a.college)},
                    aid(a.applicant) + " prefers " + cid(a.college) + " and is not outranked by a full intake");
        }
        if (sol.limits.empty() || done()) return;
        limits_in_range(sol.limits);
        for (int j = 0; j < inst_.num_colleges() && !done(); ++j) {
            const int t = sol.limits[static_cast<std::size_t>(j)];
            if (t > 0 && intake[static_cast<std::size_t>(j)] < college(j).upper)
                add(ViolationKind::unfilled_positive_limit, {cid(j)}, "unfilled college has score-limit " + std::to_string(t));
        }
        for (int e = 0; e < inst_.num_applications() && !done(); ++e) {
            const Application& a = app(e);
            const int t = sol.limits[static_cast<std::size_t>(a.college)];
            const bool admitted = mt.entry[static_cast<std::size_t>(a.applicant)] == e;
            if (admitted && a.score < t)
                add(ViolationKind::blocking_pair, {aid(a.applicant), cid(a.college)}, "admitted below the score-limit");
            if (!admitted && prefers(mt, e) && a.score >= t)
                add(ViolationKind::blocking_pair, {aid(a.applicant), cid(a.college)},
                    "meets the score-limit of a preferred college but is not admitted");
        }
    }

    void limits_in_range(const std::vector<int>& limits) const {
        if (limits.size() != inst_.colleges.size()) throw ShapeError("score-limits do not match the college count");
        for (int t : limits)
            if (t < 0 || t > inst_.max_score + 1) throw ShapeError("score-limit outside [0, max_score + 1]");
    }

    void scorelimits(const Solution& sol) {
        require_simple("score-limit");
        if (!inst_.common_quotas.empty()) throw ShapeError("score-limit stability is undefined with common quotas");
        if (sol.limits.empty()) throw ShapeError("scorelimits_H needs score-limits");
        limits_in_range(sol.limits);
        const Matching mt = induced_matching(inst_, sol.limits);
        if (!sol.matching.entry.empty()) {
            shape(sol.matching);
            for (int i = 0; i < inst_.num_applicants() && !done(); ++i)
                if (sol.matching.entry[static_cast<std::size_t>(i)] != mt.entry[static_cast<std::size_t>(i)])
                    add(ViolationKind::blocking_pair, {aid(i)}, "matching differs from the one the score-limits induce");
        }
        const auto intake = mt.intake(inst_);
        upper_quotas(intake);
        for (int j = 0; j < inst_.num_colleges() && !done(); ++j) {
            const int t = sol.limits[static_cast<std::size_t>(j)];
            if (t == 0) continue;
            int would = intake[static_cast<std::size_t>(j)];
            for (int e : inst_.applications_to(j))
                if (app(e).score == t - 1 && prefers(mt, e)) ++would;
            if (would <= college(j).upper)
                add(ViolationKind::reducible_score_limit, {cid(j)},
                    "lowering the score-limit to " + std::to_string(t - 1) + " admits " + std::to_string(would) +
                        " <= " + std::to_string(college(j).upper));
        }
    }

    std::vector<int> group_of() const {
        std::vector<int> g(inst_.colleges.size(), -1);
        for (std::size_t p = 0; p < inst_.lower_groups.size(); ++p)
            for (int j : inst_.lower_groups[p].members) g[static_cast<std::size_t>(j)] = static_cast<int>(p);
        return g;
    }

    std::vector<int> derive_open(const std::vector<int>& intake) const {
        std::vector<int> open(inst_.colleges.size());
        for (int j = 0; j < inst_.num_colleges(); ++j)
            open[static_cast<std::size_t>(j)] = intake[static_cast<std::size_t>(j)] > 0 || college(j).lower == 0;
        for (const auto& g : inst_.lower_groups) {
            bool any = false;
            for (int j : g.members) any = any || intake[static_cast<std::size_t>(j)] > 0;
            for (int j : g.members) open[static_cast<std::size_t>(j)] = any;
        }
        return open;
    }

    std::vector<int> groups_from(const Solution& sol, const std::vector<int>& open) const {
        if (!sol.group_open.empty()) {
            if (sol.group_open.size() != inst_.lower_groups.size()) throw ShapeError("group flags do not match the group count");
            return sol.group_open;
        }
        std::vector<int> flags;
        for (const auto& g : inst_.lower_groups)
            flags.push_back(std::all_of(g.members.begin(), g.members.end(),
                                        [&](int j) { return open[static_cast<std::size_t>(j)] != 0; }));
        return flags;
    }

    void open_flags(const std::vector<int>& intake, const std::vector<int>& open, const std::vector<int>& groups) {
        for (int j = 0; j < inst_.num_colleges() && !done(); ++j) {
            const int c = intake[static_cast<std::size_t>(j)];
            if (open[static_cast<std::size_t>(j)]) {
                if (c < college(j).lower)
                    add(ViolationKind::quota_breach, {cid(j)},
                        "open college admits " + std::to_string(c) + " < lower quota " + std::to_string(college(j).lower));
            } else if (c > 0) {
                add(ViolationKind::quota_breach, {cid(j)}, "closed college admits students");
            }
        }
        for (std::size_t p = 0; p < inst_.lower_groups.size() && !done(); ++p) {
            const auto& g = inst_.lower_groups[p];
            int total = 0;
            for (int j : g.members) {
                total += intake[static_cast<std::size_t>(j)];
                if (open[static_cast<std::size_t>(j)] != groups[p])
                    add(ViolationKind::quota_breach, {g.id, cid(j)}, "member open flag disagrees with its group");
            }
            if (groups[p] && total < g.lower)
                add(ViolationKind::quota_breach, {g.id},
                    "open group admits " + std::to_string(total) + " < group lower quota " + std::to_string(g.lower));
        }
    }

    void lower(const Solution& sol) {
        require_simple("lower-quota");
        const Matching& mt = sol.matching;
        shape(mt);
        const auto intake = mt.intake(inst_);
        std::vector<int> open = sol.open;
        if (open.empty()) open = derive_open(intake);
        else if (open.size() != inst_.colleges.size()) throw ShapeError("open flags do not match the college count");
        upper_quotas(intake);
        open_flags(intake, open, groups_from(sol, open));
        const auto group = group_of();
        for (int j = 0; j < inst_.num_colleges() && !done(); ++j) {
            if (open[static_cast<std::size_t>(j)]) {
                for (int e : inst_.applications_to(j)) {
                    if (!prefers(mt, e)) continue;
                    const Application& a = app(e);
                    if (admitted_over(mt, j, a.score, false) < college(j).upper) {
                        add(ViolationKind::blocking_pair, {aid(a.applicant), cid(j)},
                            aid(a.applicant) + " prefers open college " + cid(j) + " and is not outranked by a full intake");
                        if (done()) return;
                    }
                }
            } else if (group[static_cast<std::size_t>(j)] < 0) {
                std::vector<std::string> who{cid(j)};
                for (int e : inst_.applications_to(j))
                    if (prefers(mt, e)) who.push_back(aid(app(e).applicant));
                const int unsatisfied = static_cast<int>(who.size()) - 1;
                if (unsatisfied >= college(j).lower)
                    add(ViolationKind::blocking_group, std::move(who),
                        std::to_string(unsatisfied) + " unsatisfied applicants reach the lower quota " +
                            std::to_string(college(j).lower) + " of closed college " + cid(j));
            }
        }
    }

    /// True when college j (as a singleton) or some quota set containing it
    /// is full of students scoring above `s`.
    bool witnessed(const Matching& mt, const std::vector<int>& intake, int j, int s) const {
        if (intake[static_cast<std::size_t>(j)] >= college(j).upper && admitted_over(mt, j, s, false) == intake[static_cast<std::size_t>(j)])
            return true;
        for (const auto& q : inst_.common_quotas) {
            if (std::find(q.members.begin(), q.members.end(), j) == q.members.end()) continue;
            int total = 0, better = 0;
            for (int k : q.members) {
                total += intake[static_cast<std::size_t>(k)];
                better += admitted_over(mt, k, s, false);
            }
            if (total >= q.upper && better == total) return true;
        }
        return false;
    }

    void common(const Solution& sol) {
        require_simple("common-quota");
        const Matching& mt = sol.matching;
        shape(mt);
        const auto intake = mt.intake(inst_);
        upper_quotas(intake);
        set_quotas(intake);
        for (int e = 0; e < inst_.num_applications() && !done(); ++e) {
            if (!prefers(mt, e)) continue;
            const Application& a = app(e);
            if (!witnessed(mt, intake, a.college, a.score))
                add(ViolationKind::blocking_pair, {aid(a.applicant), cid(a.college)},
                    "no college or quota set containing " + cid(a.college) + " is full of better students");
        }
    }

    bool full_of_better(const Matching& mt, const std::vector<int>& intake, int j, int s) const {
        return intake[static_cast<std::size_t>(j)] >= college(j).upper && admitted_over(mt, j, s, false) == intake[static_cast<std::size_t>(j)];
    }

    void paired(const Solution& sol) {
        if (!inst_.common_quotas.empty()) throw ShapeError("paired stability is undefined with common quotas");
        const Matching& mt = sol.matching;
        shape(mt);
        const auto intake = mt.intake(inst_);
        upper_quotas(intake);
        for (int e = 0; e < inst_.num_applications() && !done(); ++e) {
            if (!prefers(mt, e)) continue;
            const Application& a = app(e);
            if (!a.paired()) {
                if (!full_of_better(mt, intake, a.college, a.score))
                    add(ViolationKind::blocking_pair, {aid(a.applicant), cid(a.college)},
                        cid(a.college) + " is not full of better students");
            } else if (!full_of_better(mt, intake, a.college, a.score) && !full_of_better(mt, intake, a.second, a.second_score)) {
                add(ViolationKind::paired_block, {aid(a.applicant), cid(a.college), cid(a.second)},
                    "neither college of the pair is full of better students");
            }
        }
    }

    const Instance& inst_;
    bool first_only_;
    StabilityReport report_;
};

bool limits_variant(Variant v) { return v == Variant::scorelimits_h; }

/// Decodes candidate `index` into a solution (matching, and limits or open
/// flags where the variant needs them).
class Candidates {
public:
    Candidates(const Instance& inst, Variant variant) : inst_(inst), variant_(variant) {
        if (limits_variant(variant)) {
            radix_.assign(inst.colleges.size(), inst.max_score + 2);
        } else {
            for (int i = 0; i < inst.num_applicants(); ++i) radix_.push_back(static_cast<int>(inst.list(i).size()) + 1);
        }
        total_ = 1;
        for (int r : radix_) total_ *= r;
        if (total_ > kEnumerationGuard)
            throw std::length_error("instance too large for exhaustive enumeration (" + std::to_string(total_) + " candidates)");
    }

    long long size() const { return static_cast<long long>(total_); }
    double size_estimate() const { return total_; }

    /// False when the candidate can be rejected before a stability check.
    bool decode(long long index, Solution& sol) const {
        if (limits_variant(variant_)) {
            sol.limits.resize(radix_.size());
            for (std::size_t j = 0; j < radix_.size(); ++j) {
                sol.limits[j] = static_cast<int>(index % radix_[j]);
                index /= radix_[j];
            }
            sol.matching = induced_matching(inst_, sol.limits);
            return true;
        }
        sol.matching.entry.resize(radix_.size());
        std::vector<int>& intake = scratch_;
        intake.assign(inst_.colleges.size(), 0);
        for (std::size_t i = 0; i < radix_.size(); ++i) {
            const int d = static_cast<int>(index % radix_[i]);
            index /= radix_[i];
            const int e = d == 0 ? -1 : inst_.list(static_cast<int>(i))[static_cast<std::size_t>(d - 1)];
            sol.matching.entry[i] = e;
            if (e < 0) continue;
            const Application& a = inst_.applications[static_cast<std::size_t>(e)];
            for (int j : {a.college, a.second}) {
                if (j < 0) continue;
                if (++intake[static_cast<std::size_t>(j)] > inst_.colleges[static_cast<std::size_t>(j)].upper) return false;
            }
        }
        if (variant_ == Variant::lower) fill_open(sol, intake);
        return true;
    }

private:
    void fill_open(Solution& sol, const std::vector<int>& intake) const {
        sol.open.assign(inst_.colleges.size(), 0);
        for (int j = 0; j < inst_.num_colleges(); ++j)
            sol.open[static_cast<std::size_t>(j)] = intake[static_cast<std::size_t>(j)] > 0 || inst_.colleges[static_cast<std::size_t>(j)].lower == 0;
        sol.group_open.assign(inst_.lower_groups.size(), 0);
        for (std::size_t p = 0; p < inst_.lower_groups.size(); ++p) {
            bool any = false;
            for (int j : inst_.lower_groups[p].members) any = any || intake[static_cast<std::size_t>(j)] > 0;
            sol.group_open[p] = any;
            for (int j : inst_.lower_groups[p].members) sol.open[static_cast<std::size_t>(j)] = any;
        }
    }

    const Instance& inst_;
    Variant variant_;
    std::vector<int> radix_;
    double total_ = 1;
    mutable std::vector<int> scratch_;
};

void scan(const Instance& inst, Variant variant, const Candidates& cand, long long begin, long long end,
          std::vector<Solution>& out) {
    Candidates local = cand;  // own scratch space
    Solution sol;
    for (long long k = begin; k < end; ++k) {
        sol = Solution{};
        if (!local.decode(k, sol)) continue;
        if (Auditor(inst, true).run(sol, variant).violations.empty()) out.push_back(sol);
    }
}

StableSet truncate(std::vector<Solution> all, std::size_t cap) {
    StableSet out;
    out.truncated = all.size() > cap;
    if (out.truncated) all.resize(cap);
    out.solutions = std::move(all);
    return out;
}

}  // namespace

StabilityReport check(const Instance& inst, const Solution& sol, Variant variant) {
    return Auditor(inst, false).run(sol, variant);
}

bool is_stable(const Instance& inst, const Solution& sol, Variant variant) {
    return Auditor(inst, true).run(sol, variant).violations.empty();
}

StabilityReport check_feasibility(const Instance& inst, const Solution& sol) {
    return Auditor(inst, false).feasibility(sol);
}

double candidate_count(const Instance& inst, Variant variant) {
    double total = 1;
    if (limits_variant(variant)) return std::pow(inst.max_score + 2.0, inst.num_colleges());
    for (int i = 0; i < inst.num_applicants(); ++i) total *= static_cast<double>(inst.list(i).size()) + 1;
    return total;
}

StableSet enumerate_stable_serial(const Instance& inst, Variant variant, std::size_t cap) {
    Candidates cand(inst, variant);
    std::vector<Solution> all;
    scan(inst, variant, cand, 0, cand.size(), all);
    return truncate(std::move(all), cap);
}

StableSet enumerate_stable(const Instance& inst, Variant variant, std::size_t cap) {
    Candidates cand(inst, variant);
    const long long total = cand.size();
    constexpr long long kBlock = 4096;
    const long long blocks = (total + kBlock - 1) / kBlock;
    if (blocks <= 1) return enumerate_stable_serial(inst, variant, cap);

    std::vector<std::vector<Solution>> found(static_cast<std::size_t>(blocks));
    // Any ShapeError would be thrown identically by the first candidate, so
    // probe it serially before entering the parallel region.
    {
        Solution probe;
        if (Candidates(cand).decode(0, probe)) (void)Auditor(inst, true).run(probe, variant);
    }
#pragma omp parallel for schedule(dynamic, 1)
    for (long long b = 0; b < blocks; ++b)
        scan(inst, variant, cand, b * kBlock, std::min(total, (b + 1) * kBlock), found[static_cast<std::size_t>(b)]);

    std::vector<Solution> all;
    for (auto& block : found)
        for (auto& s : block) all.push_back(std::move(s));
    return truncate(std::move(all), cap);
}

}  // namespace admit
