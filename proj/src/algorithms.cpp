#include "admit/algorithms.hpp"

#include <algorithm>
#include <deque>

namespace admit {

namespace {

void require_simple_market(const Instance& inst, const char* what, bool allow_ties) {
    if (inst.has_paired()) throw PreconditionError(std::string(what) + ": paired applications are not supported");
    if (!inst.common_quotas.empty()) throw PreconditionError(std::string(what) + ": common quotas are not supported");
    if (!allow_ties && inst.has_ties()) throw PreconditionError(std::string(what) + ": ties detected");
}

/// Applicant-proposing deferred acceptance that can be resumed after a
/// college is closed.
class Proposals {
public:
    explicit Proposals(const Instance& inst)
        : inst_(inst),
          next_(static_cast<std::size_t>(inst.num_applicants()), 0),
          held_(static_cast<std::size_t>(inst.num_colleges())),
          closed_(static_cast<std::size_t>(inst.num_colleges()), 0),
          matching_(Matching::unmatched(inst)) {
        for (int i = 0; i < inst.num_applicants(); ++i) free_.push_back(i);
    }

    void close(int j) {
        closed_[static_cast<std::size_t>(j)] = 1;
        for (int i : held_[static_cast<std::size_t>(j)]) {
            matching_.entry[static_cast<std::size_t>(i)] = -1;
            free_.push_back(i);
        }
        held_[static_cast<std::size_t>(j)].clear();
    }

    void run() {
        while (!free_.empty()) {
            int i = free_.front();
            free_.pop_front();
            const auto& list = inst_.list(i);
            while (next_[static_cast<std::size_t>(i)] < static_cast<int>(list.size())) {
                const int e = list[static_cast<std::size_t>(next_[static_cast<std::size_t>(i)]++)];
                const Application& a = inst_.applications[static_cast<std::size_t>(e)];
                const int j = a.college;
                if (closed_[static_cast<std::size_t>(j)]) continue;
                auto& held = held_[static_cast<std::size_t>(j)];
                held.push_back(i);
                matching_.entry[static_cast<std::size_t>(i)] = e;
                if (static_cast<int>(held.size()) <= inst_.colleges[static_cast<std::size_t>(j)].upper) break;
                auto worst = std::min_element(held.begin(), held.end(),
                                              [&](int x, int y) { return inst_.score(x, j) < inst_.score(y, j); });
                const int loser = *worst;
                held.erase(worst);
                matching_.entry[static_cast<std::size_t>(loser)] = -1;
                if (loser == i) continue;
                free_.push_back(loser);
                break;
            }
        }
    }

    const Matching& matching() const { return matching_; }
    bool closed(int j) const { return closed_[static_cast<std::size_t>(j)] != 0; }
    int intake(int j) const { return static_cast<int>(held_[static_cast<std::size_t>(j)].size()); }

private:
    const Instance& inst_;
    std::vector<int> next_;
    std::vector<std::vector<int>> held_;
    std::vector<char> closed_;
    std::deque<int> free_;
    Matching matching_;
};

Matching college_proposing(const Instance& inst) {
    const int m = inst.num_colleges();
    // Each college's applications, best score first.
    std::vector<std::vector<int>> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        order[static_cast<std::size_t>(j)] = inst.applications_to(j);
        std::sort(order[static_cast<std::size_t>(j)].begin(), order[static_cast<std::size_t>(j)].end(), [&](int x, int y) {
            return inst.applications[static_cast<std::size_t>(x)].score > inst.applications[static_cast<std::size_t>(y)].score;
        });
    }
    std::vector<int> next(static_cast<std::size_t>(m), 0), held(static_cast<std::size_t>(m), 0);
    Matching mt = Matching::unmatched(inst);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < m; ++j) {
            const auto& offers = order[static_cast<std::size_t>(j)];
            auto& k = next[static_cast<std::size_t>(j)];
            while (held[static_cast<std::size_t>(j)] < inst.colleges[static_cast<std::size_t>(j)].upper &&
                   k < static_cast<int>(offers.size())) {
                const int e = offers[static_cast<std::size_t>(k++)];
                const int i = inst.applications[static_cast<std::size_t>(e)].applicant;
                int& cur = mt.entry[static_cast<std::size_t>(i)];
                changed = true;
                if (cur >= 0 && inst.position(cur) < inst.position(e)) continue;  // refused
                if (cur >= 0) --held[static_cast<std::size_t>(inst.applications[static_cast<std::size_t>(cur)].college)];
                cur = e;
                ++held[static_cast<std::size_t>(j)];
            }
        }
    }
    return mt;
}

}  // namespace

Matching da(const Instance& inst, Side side) {
    require_simple_market(inst, "deferred acceptance", false);
    if (side == Side::college) return college_proposing(inst);
    Proposals p(inst);
    p.run();
    return p.matching();
}

Matching da_without(const Instance& inst, const std::vector<char>& closed) {
    require_simple_market(inst, "deferred acceptance", false);
    Proposals p(inst);
    for (int j = 0; j < inst.num_colleges(); ++j)
        if (j < static_cast<int>(closed.size()) && closed[static_cast<std::size_t>(j)]) p.close(j);
    p.run();
    return p.matching();
}

Matching induced_matching(const Instance& inst, std::span<const int> limits) {
    Matching mt = Matching::unmatched(inst);
    for (int i = 0; i < inst.num_applicants(); ++i) {
        for (int e : inst.list(i)) {
            const Application& a = inst.applications[static_cast<std::size_t>(e)];
            if (a.paired()) continue;
            if (a.score >= limits[static_cast<std::size_t>(a.college)]) {
                mt.entry[static_cast<std::size_t>(i)] = e;
                break;
            }
        }
    }
    return mt;
}

std::pair<Matching, std::vector<int>> gs_scorelimits(const Instance& inst, Side side) {
    require_simple_market(inst, "score-limit Gale-Shapley", true);
    const int m = inst.num_colleges();
    if (side == Side::applicant) {
        std::vector<int> t(static_cast<std::size_t>(m), 0);
        for (;;) {
            Matching mt = induced_matching(inst, t);
            const auto intake = mt.intake(inst);
            int j = 0;
            while (j < m && intake[static_cast<std::size_t>(j)] <= inst.colleges[static_cast<std::size_t>(j)].upper) ++j;
            if (j == m) return {mt, t};
            // Raise t_j just enough to bring the college back under its quota.
            std::vector<int> scores;
            for (int e : mt.entry)
                if (e >= 0 && inst.applications[static_cast<std::size_t>(e)].college == j)
                    scores.push_back(inst.applications[static_cast<std::size_t>(e)].score);
            std::sort(scores.rbegin(), scores.rend());
            t[static_cast<std::size_t>(j)] = scores[static_cast<std::size_t>(inst.colleges[static_cast<std::size_t>(j)].upper)] + 1;
        }
    }

    std::vector<int> t(static_cast<std::size_t>(m), inst.max_score + 1);
    Matching mt = induced_matching(inst, t);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < m; ++j) {
            auto& tj = t[static_cast<std::size_t>(j)];
            while (tj > 0) {
                int would = 0;
                for (int e : inst.applications_to(j)) {
                    const Application& a = inst.applications[static_cast<std::size_t>(e)];
                    const int cur = mt.entry[static_cast<std::size_t>(a.applicant)];
                    if (cur == e) ++would;
                    else if (a.score == tj - 1 && (cur < 0 || inst.position(e) < inst.position(cur))) ++would;
                }
                if (would > inst.colleges[static_cast<std::size_t>(j)].upper) break;
                --tj;
                mt = induced_matching(inst, t);
                changed = true;
            }
        }
    }
    return {mt, t};
}

HeuristicResult lower_quota_heuristic(const Instance& inst) {
    require_simple_market(inst, "lower-quota heuristic", false);
    HeuristicResult out;
    Proposals p(inst);
    p.run();
    for (;;) {
        int pick = -1;
        for (int j = 0; j < inst.num_colleges(); ++j) {
            const int lower = inst.colleges[static_cast<std::size_t>(j)].lower;
            if (p.closed(j) || lower == 0 || p.intake(j) >= lower) continue;
            if (pick < 0) {
                pick = j;
                continue;
            }
            const long long a = p.intake(j), la = lower;
            const long long b = p.intake(pick), lb = inst.colleges[static_cast<std::size_t>(pick)].lower;
            // a/la < b/lb, then fewer admitted; equal keeps the lower index.
            if (a * lb < b * la || (a * lb == b * la && a < b)) pick = j;
        }
        if (pick < 0) break;
        out.trace.push_back({pick, p.intake(pick)});
        out.closed.push_back(pick);
        p.close(pick);
        p.run();
    }
    out.matching = p.matching();
    return out;
}

}  // namespace admit
