#include "admit/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace admit {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool chance(double p) { return p > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))]; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

bool laminar_with(const std::vector<std::vector<int>>& sets, const std::vector<int>& cand) {
    std::set<int> b(cand.begin(), cand.end());
    for (const auto& s : sets) {
        std::set<int> a(s.begin(), s.end());
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() == a.size() && a.size() == b.size()) return false;  // duplicate
        if (!common.empty() && common.size() != a.size() && common.size() != b.size()) return false;
    }
    return true;
}

void check_config(const GenConfig& cfg) {
    auto bad = [](const std::string& what) { throw ValidationError("generator config: " + what); };
    if (cfg.applicants < 0 || cfg.colleges < 0) bad("counts must be non-negative");
    if (cfg.max_score < 0) bad("max_score must be non-negative");
    if (cfg.min_list < 0 || cfg.min_list > cfg.max_list) bad("list length range is empty");
    if (cfg.min_upper < 1 || cfg.min_upper > cfg.max_upper) bad("upper quota range must lie in [1, inf)");
    for (double p : {cfg.tie_density, cfg.lower_probability, cfg.paired_probability})
        if (!(p >= 0.0 && p <= 1.0)) bad("probabilities must lie in [0, 1]");
    if (cfg.quota_sets < 0 || cfg.lower_groups < 0) bad("set counts must be non-negative");
    if (cfg.topology == Topology::nested && cfg.colleges < 1) bad("nested topology needs at least one college");
    if (cfg.topology == Topology::random && cfg.colleges < 2) bad("random topology needs at least two colleges");
    if (cfg.lower_groups > 0 && cfg.colleges < 1) bad("lower groups need at least one college");
}

}  // namespace

Topology parse_topology(const std::string& name) {
    if (name == "none") return Topology::none;
    if (name == "nested") return Topology::nested;
    if (name == "random") return Topology::random;
    throw ValidationError("unknown topology '" + name + "'");
}

Instance generate(const GenConfig& cfg) {
    check_config(cfg);
    Rng rng(cfg.seed);
    const int n = cfg.applicants;
    const int m = cfg.colleges;

    Instance inst;
    inst.max_score = cfg.max_score;
    for (int j = 0; j < m; ++j) {
        College c;
        c.id = "c" + std::to_string(j + 1);
        c.upper = rng.uniform(cfg.min_upper, cfg.max_upper);
        if (rng.chance(cfg.lower_probability)) c.lower = rng.uniform(1, c.upper);
        inst.colleges.push_back(std::move(c));
    }

    // Common-quota sets.
    std::vector<std::vector<int>> sets;
    if (cfg.topology != Topology::none) {
        std::vector<int> perm(static_cast<std::size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        const int min_size = m >= 2 ? 2 : 1;
        for (int attempt = 0; attempt < 50 * cfg.quota_sets && static_cast<int>(sets.size()) < cfg.quota_sets; ++attempt) {
            std::vector<int> cand;
            if (cfg.topology == Topology::nested) {
                int len = rng.uniform(min_size, m);
                int start = rng.uniform(0, m - len);
                cand.assign(perm.begin() + start, perm.begin() + start + len);
            } else {
                int len = rng.uniform(2, m);
                std::vector<int> all(perm);
                std::shuffle(all.begin(), all.end(), rng.engine());
                cand.assign(all.begin(), all.begin() + len);
            }
            std::sort(cand.begin(), cand.end());
            if (cfg.topology == Topology::nested ? !laminar_with(sets, cand)
                                                 : std::find(sets.begin(), sets.end(), cand) != sets.end())
                continue;
            sets.push_back(cand);
        }
        for (std::size_t p = 0; p < sets.size(); ++p) {
            int total = 0;
            for (int j : sets[p]) total += inst.colleges[static_cast<std::size_t>(j)].upper;
            QuotaSet q;
            q.id = "Q" + std::to_string(p + 1);
            q.members = sets[p];
            q.upper = rng.uniform(1, std::max(1, total - 1));
            inst.common_quotas.push_back(std::move(q));
        }
    }

    // Colleges joined by a quota set share one score per applicant.
    std::vector<int> component(static_cast<std::size_t>(m));
    std::iota(component.begin(), component.end(), 0);
    auto find = [&](int j) {
        while (component[static_cast<std::size_t>(j)] != j) j = component[static_cast<std::size_t>(j)];
        return j;
    };
    for (const auto& s : sets)
        for (int j : s) component[static_cast<std::size_t>(find(j))] = find(s.front());

    std::vector<std::vector<int>> used(static_cast<std::size_t>(m));            // scores held per component
    std::vector<std::vector<int>> held(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), -1));
    auto score_for = [&](int i, int j) {
        const int k = find(j);
        int& cell = held[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (cell >= 0) return cell;
        auto& taken = used[static_cast<std::size_t>(k)];
        if (!taken.empty() && rng.chance(cfg.tie_density)) {
            cell = rng.pick(taken);
        } else {
            std::vector<int> fresh;
            for (int s = 0; s <= cfg.max_score; ++s)
                if (std::find(taken.begin(), taken.end(), s) == taken.end()) fresh.push_back(s);
            if (fresh.empty()) {
                if (cfg.tie_density == 0.0)
                    throw ValidationError("generator config: tie density 0 needs more distinct scores than applicants");
                cell = rng.pick(taken);
            } else {
                cell = rng.pick(fresh);
            }
        }
        taken.push_back(cell);
        return cell;
    };

    for (int i = 0; i < n; ++i) {
        inst.applicants.push_back("a" + std::to_string(i + 1));
        if (m == 0) continue;
        const int len = rng.uniform(cfg.min_list, cfg.max_list);
        std::set<std::pair<int, int>> targets;
        int rank = 0;
        for (int k = 0; k < len; ++k) {
            std::vector<std::pair<int, int>> simple, paired;
            for (int j = 0; j < m; ++j) {
                if (!targets.count({j, -1})) simple.emplace_back(j, -1);
                for (int l = j + 1; l < m; ++l)
                    if (!targets.count({j, l})) paired.emplace_back(j, l);
            }
            bool want_pair = rng.chance(cfg.paired_probability);
            if (want_pair && paired.empty()) want_pair = false;
            if (!want_pair && simple.empty()) want_pair = !paired.empty() && cfg.paired_probability > 0.0;
            const auto& pool = want_pair ? paired : simple;
            if (pool.empty()) break;
            auto target = rng.pick(pool);
            targets.insert(target);
            Application a;
            a.applicant = i;
            a.rank = ++rank;
            if (target.second >= 0 && rng.chance(0.5)) std::swap(target.first, target.second);
            a.college = target.first;
            a.second = target.second;
            a.score = score_for(i, a.college);
            if (a.paired()) a.second_score = score_for(i, a.second);
            inst.applications.push_back(a);
        }
    }

    // Lower groups are disjoint; stop early once every college is taken.
    std::vector<int> free_colleges(static_cast<std::size_t>(m));
    std::iota(free_colleges.begin(), free_colleges.end(), 0);
    for (int g = 0; g < cfg.lower_groups && !free_colleges.empty(); ++g) {
        std::shuffle(free_colleges.begin(), free_colleges.end(), rng.engine());
        const int size = rng.uniform(1, std::min(3, static_cast<int>(free_colleges.size())));
        std::vector<int> all(free_colleges);
        free_colleges.erase(free_colleges.begin(), free_colleges.begin() + size);
        LowerGroup lg;
        lg.id = "G" + std::to_string(g + 1);
        lg.members.assign(all.begin(), all.begin() + size);
        std::sort(lg.members.begin(), lg.members.end());
        int total = 0;
        for (int j : lg.members) total += inst.colleges[static_cast<std::size_t>(j)].upper;
        lg.lower = rng.uniform(1, total);
        inst.lower_groups.push_back(std::move(lg));
    }

    inst.finalize();
    return inst;
}

}  // namespace admit
