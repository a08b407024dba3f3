#include "admit/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace admit {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

template <class Items>
void require_unique_ids(const Items& items, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& item : items) {
        if (!seen.insert(item.id).second) fail(std::string("duplicate ") + what + " id '" + item.id + "'");
    }
}

void check_members(const std::vector<int>& members, int m, const std::string& owner) {
    if (members.empty()) fail(owner + " has no members");
    std::set<int> seen;
    for (int j : members) {
        if (j < 0 || j >= m) fail(owner + " references unknown college index " + std::to_string(j));
        if (!seen.insert(j).second) fail(owner + " lists a college twice");
    }
}

}  // namespace

void Instance::finalize() {
    const int n = num_applicants();
    const int m = num_colleges();

    if (max_score < 0) fail("max_score must be non-negative");
    {
        std::unordered_set<std::string> seen;
        for (const auto& a : applicants)
            if (!seen.insert(a).second) fail("duplicate applicant id '" + a + "'");
    }
    require_unique_ids(colleges, "college");
    require_unique_ids(common_quotas, "quota set");
    require_unique_ids(lower_groups, "lower group");

    for (const auto& c : colleges) {
        if (c.upper < 1) fail("college " + c.id + ": upper quota must be at least 1");
        if (c.lower < 0 || c.lower > c.upper) fail("college " + c.id + ": lower quota must lie in [0, upper]");
    }

    lists_.assign(static_cast<std::size_t>(n), {});
    by_college_.assign(static_cast<std::size_t>(m), {});
    position_.assign(applications.size(), 0);
    score_table_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), -1);

    for (int e = 0; e < num_applications(); ++e) {
        const Application& a = applications[static_cast<std::size_t>(e)];
        if (a.applicant < 0 || a.applicant >= n) fail("application references unknown applicant");
        if (e > 0 && applications[static_cast<std::size_t>(e - 1)].applicant > a.applicant)
            fail("applications must be grouped by applicant");
        const std::string who = "applicant " + applicants[static_cast<std::size_t>(a.applicant)];
        if (a.rank < 1) fail(who + ": rank must be positive");
        if (a.college < 0 || a.college >= m) fail(who + ": unknown college");
        if (a.paired()) {
            if (a.second >= m) fail(who + ": unknown college");
            if (a.second == a.college) fail(who + ": paired application needs two distinct colleges");
        }
        auto check_score = [&](int s) {
            if (s < 0 || s > max_score)
                fail(who + ": score " + std::to_string(s) + " outside [0, max_score]");
        };
        check_score(a.score);
        if (a.paired()) check_score(a.second_score);
        lists_[static_cast<std::size_t>(a.applicant)].push_back(e);
    }

    for (int i = 0; i < n; ++i) {
        auto& l = lists_[static_cast<std::size_t>(i)];
        std::stable_sort(l.begin(), l.end(), [&](int x, int y) {
            return applications[static_cast<std::size_t>(x)].rank < applications[static_cast<std::size_t>(y)].rank;
        });
        const std::string who = "applicant " + applicants[static_cast<std::size_t>(i)];
        std::set<std::pair<int, int>> targets;
        for (std::size_t p = 0; p < l.size(); ++p) {
            const Application& a = applications[static_cast<std::size_t>(l[p])];
            if (p > 0 && applications[static_cast<std::size_t>(l[p - 1])].rank == a.rank)
                fail("duplicate rank " + std::to_string(a.rank) + " in list of " + who);
            position_[static_cast<std::size_t>(l[p])] = static_cast<int>(p);
            const std::pair<int, int> key = a.paired() ? std::pair<int, int>{std::min(a.college, a.second), std::max(a.college, a.second)}
                                                        : std::pair<int, int>{a.college, -1};
            if (!targets.insert(key).second) fail("duplicate application target in list of " + who);
            for (int j : {a.college, a.second}) {
                if (j < 0) continue;
                int& cell = score_table_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
                int s = a.score_at(j);
                if (cell >= 0 && cell != s)
                    fail("inconsistent scores of " + who + " at college " + colleges[static_cast<std::size_t>(j)].id);
                cell = s;
                by_college_[static_cast<std::size_t>(j)].push_back(l[p]);
            }
        }
    }
    for (auto& v : by_college_) std::sort(v.begin(), v.end());

    for (const auto& q : common_quotas) {
        check_members(q.members, m, "quota set " + q.id);
        if (q.upper < 0) fail("quota set " + q.id + ": upper quota must be non-negative");
        for (int i = 0; i < n; ++i) {
            int seen = -1;
            int seen_college = -1;
            for (int j : q.members) {
                int s = score(i, j);
                if (s < 0) continue;
                if (seen >= 0 && s != seen)
                    fail("unequal scores inside quota set " + q.id + ": applicant " + applicants[static_cast<std::size_t>(i)] +
                         " has " + std::to_string(seen) + " at " + colleges[static_cast<std::size_t>(seen_college)].id + " and " +
                         std::to_string(s) + " at " + colleges[static_cast<std::size_t>(j)].id);
                seen = s;
                seen_college = j;
            }
        }
    }
    std::vector<int> group_of(static_cast<std::size_t>(m), -1);
    for (std::size_t p = 0; p < lower_groups.size(); ++p) {
        const auto& g = lower_groups[p];
        check_members(g.members, m, "lower group " + g.id);
        if (g.lower < 1) fail("lower group " + g.id + ": lower quota must be at least 1");
        for (int j : g.members) {
            int& owner = group_of[static_cast<std::size_t>(j)];
            if (owner >= 0)
                fail("college " + colleges[static_cast<std::size_t>(j)].id + " belongs to lower groups " +
                     lower_groups[static_cast<std::size_t>(owner)].id + " and " + g.id);
            owner = static_cast<int>(p);
        }
    }
}

int Instance::score(int i, int j) const {
    return score_table_[static_cast<std::size_t>(i) * colleges.size() + static_cast<std::size_t>(j)];
}

bool Instance::has_paired() const {
    return std::any_of(applications.begin(), applications.end(), [](const Application& a) { return a.paired(); });
}

bool Instance::has_lower_quotas() const {
    return std::any_of(colleges.begin(), colleges.end(), [](const College& c) { return c.lower > 0; }) ||
           !lower_groups.empty();
}

bool Instance::has_ties() const {
    const int n = num_applicants();
    auto tied = [&](const std::vector<int>& members) {
        std::set<int> used;
        for (int i = 0; i < n; ++i) {
            for (int j : members) {
                int s = score(i, j);
                if (s < 0) continue;
                if (!used.insert(s).second) return true;
                break;  // one score per applicant and set
            }
        }
        return false;
    };
    for (int j = 0; j < num_colleges(); ++j)
        if (tied({j})) return true;
    for (const auto& q : common_quotas)
        if (tied(q.members)) return true;
    return false;
}

int Instance::sets_containing(int j) const {
    int q = 1;
    for (const auto& set : common_quotas)
        q += static_cast<int>(std::count(set.members.begin(), set.members.end(), j));
    return q;
}

int Instance::college_index(const std::string& id) const {
    for (int j = 0; j < num_colleges(); ++j)
        if (colleges[static_cast<std::size_t>(j)].id == id) return j;
    return -1;
}

bool Instance::operator==(const Instance& other) const {
    return max_score == other.max_score && applicants == other.applicants && colleges == other.colleges &&
           applications == other.applications && common_quotas == other.common_quotas &&
           lower_groups == other.lower_groups;
}

bool is_nested(const Instance& inst) {
    const auto& sets = inst.common_quotas;
    for (std::size_t p = 0; p < sets.size(); ++p) {
        std::set<int> a(sets[p].members.begin(), sets[p].members.end());
        for (std::size_t q = p + 1; q < sets.size(); ++q) {
            std::set<int> b(sets[q].members.begin(), sets[q].members.end());
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common.empty()) continue;
            if (common.size() != a.size() && common.size() != b.size()) return false;
        }
    }
    return true;
}

std::string describe(const Instance& inst, int application) {
    const Application& a = inst.applications[static_cast<std::size_t>(application)];
    std::string s = inst.applicants[static_cast<std::size_t>(a.applicant)] + "->";
    if (a.paired())
        s += "(" + inst.colleges[static_cast<std::size_t>(a.college)].id + "," +
             inst.colleges[static_cast<std::size_t>(a.second)].id + ")";
    else
        s += inst.colleges[static_cast<std::size_t>(a.college)].id;
    return s;
}

}  // namespace admit
