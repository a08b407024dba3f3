#pragma once

// Helpers shared by the unit tests and the acceptance runner: fixture
// loading, a naive full-domain model evaluator that does not go through the
// solver, and conversions between IP projections and oracle solutions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "admit/algorithms.hpp"
#include "admit/builders.hpp"
#include "admit/generator.hpp"
#include "admit/io.hpp"
#include "admit/model.hpp"
#include "admit/oracle.hpp"
#include "admit/preprocess.hpp"
#include "admit/solver.hpp"

namespace admit::test {

inline Instance fixture(const std::string& name) {
    return parse_instance(read_file(std::string(ADMIT_FIXTURE_DIR) + "/" + name + ".json"));
}

/// Generates with `cfg`, bumping the seed until `accept` holds (at most 1000
/// tries). Generator configuration errors also bump the seed.
template <class Pred>
Instance generate_where(GenConfig cfg, Pred accept) {
    for (int tries = 0; tries < 1000; ++tries, cfg.seed += 7919) {
        try {
            Instance inst = generate(cfg);
            if (accept(inst)) return inst;
        } catch (const ValidationError&) {
        }
    }
    throw std::runtime_error("generate_where: no acceptable instance");
}

inline bool satisfied(const Constraint& c, const std::vector<std::int64_t>& v) {
    std::int64_t lhs = 0;
    for (const Term& t : c.terms) lhs += t.coef * v[static_cast<std::size_t>(t.var)];
    switch (c.relation) {
        case Relation::le: return lhs <= c.rhs;
        case Relation::ge: return lhs >= c.rhs;
        case Relation::eq: return lhs == c.rhs;
    }
    return false;
}

/// Result of scanning every point of the variable domain product.
struct NaiveScan {
    std::set<std::vector<std::int64_t>> projections;
    std::optional<std::vector<std::int64_t>> best;  // lexicographic objective optimum
    std::uint64_t feasible = 0;
};

inline std::vector<std::int64_t> objective_vector(const LinearModel& model, const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out;
    for (const auto& o : model.objectives()) {
        std::int64_t s = 0;
        for (const Term& t : o.terms) s += t.coef * v[static_cast<std::size_t>(t.var)];
        out.push_back(s);
    }
    return out;
}

/// True when objective vector a is lexicographically better than b.
inline bool better(const LinearModel& model, const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == b[k]) continue;
        return model.objectives()[k].sense == Sense::minimize ? a[k] < b[k] : a[k] > b[k];
    }
    return false;
}

/// Exhaustive scan over the full domain. `projection` must be given in the
/// column order the result should use.
inline NaiveScan naive_scan(const LinearModel& model, const std::vector<int>& projection) {
    const auto& vars = model.variables();
    std::vector<std::int64_t> v(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) v[k] = vars[k].lower;
    NaiveScan out;
    for (;;) {
        bool ok = true;
        for (const auto& c : model.constraints())
            if (!satisfied(c, v)) {
                ok = false;
                break;
            }
        if (ok) {
            ++out.feasible;
            std::vector<std::int64_t> row;
            for (int p : projection) row.push_back(v[static_cast<std::size_t>(p)]);
            out.projections.insert(row);
            auto obj = objective_vector(model, v);
            if (!model.objectives().empty()) {
                if (!out.best || better(model, obj, *out.best)) out.best = obj;
            }
        }
        std::size_t k = 0;
        while (k < vars.size() && v[k] == vars[k].upper) {
            v[k] = vars[k].lower;
            ++k;
        }
        if (k == vars.size()) break;
        ++v[k];
    }
    return out;
}

/// Matchings (per-applicant application index) of every feasible assignment.
inline std::set<std::vector<int>> ip_matchings(const LinearModel& model, std::size_t cap = 1u << 20) {
    const std::vector<int> proj = assignment_vars(model);
    const Enumeration en = enumerate_feasible(model, proj, cap);
    if (en.truncated) throw std::runtime_error("ip_matchings: enumeration truncated");
    std::set<std::vector<int>> out;
    for (const auto& row : en.rows) {
        std::vector<int> entry(static_cast<std::size_t>(model.num_applicants), -1);
        for (std::size_t c = 0; c < en.columns.size(); ++c) {
            if (row[c] != 1) continue;
            const auto& role = model.variables()[static_cast<std::size_t>(en.columns[c])].role;
            entry[static_cast<std::size_t>(role.aux)] = role.index;
        }
        out.insert(entry);
    }
    return out;
}

inline std::set<std::vector<int>> oracle_matchings(const Instance& inst, Variant v) {
    const StableSet set = enumerate_stable(inst, v, 1u << 22);
    std::set<std::vector<int>> out;
    for (const auto& s : set.solutions) out.insert(s.matching.entry);
    return out;
}

/// Score-limit vectors (college order) of every feasible assignment.
inline std::set<std::vector<int>> ip_limit_vectors(const LinearModel& model) {
    const std::vector<int> proj = limit_vars(model);
    const Enumeration en = enumerate_feasible(model, proj, 1u << 20);
    if (en.truncated) throw std::runtime_error("ip_limit_vectors: enumeration truncated");
    std::set<std::vector<int>> out;
    for (const auto& row : en.rows) {
        std::vector<int> t(static_cast<std::size_t>(model.num_colleges), 0);
        for (std::size_t c = 0; c < en.columns.size(); ++c)
            t[static_cast<std::size_t>(model.variables()[static_cast<std::size_t>(en.columns[c])].role.index)] = static_cast<int>(row[c]);
        out.insert(t);
    }
    return out;
}

inline std::set<std::vector<int>> oracle_limit_vectors(const Instance& inst) {
    std::set<std::vector<int>> out;
    for (const auto& s : enumerate_stable(inst, Variant::scorelimits_h, 1u << 22).solutions) out.insert(s.limits);
    return out;
}

inline std::int64_t rank_sum(const Instance& inst, const Matching& m) {
    std::int64_t s = 0;
    for (int e : m.entry)
        if (e >= 0) s += inst.applications[static_cast<std::size_t>(e)].rank;
    return s;
}

}  // namespace admit::test
