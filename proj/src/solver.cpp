#include "admit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>
#include <stdexcept>

namespace admit {

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::limit_reached: return "limit_reached";
    }
    return "unknown";
}

namespace {

__extension__ using i128 = __int128;
using Clock = std::chrono::steady_clock;

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

std::int64_t clamp64(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
    if (v < std::numeric_limits<std::int64_t>::min()) return std::numeric_limits<std::int64_t>::min();
    return static_cast<std::int64_t>(v);
}

/// lb <= sum(terms) <= ub; a missing side is unbounded.
struct Row {
    std::vector<Term> terms;
    std::optional<std::int64_t> lb;
    std::optional<std::int64_t> ub;
};

enum class Flow { keep_going, stop };

/// Depth-first search state: current domains, an undo trail and a propagation
/// queue over rows.
class Engine {
public:
    Engine(const LinearModel& model, const SolveLimits& limits, Clock::time_point start)
        : model_(model), limits_(limits), start_(start) {
        const auto nv = static_cast<std::size_t>(model.num_vars());
        lo_.resize(nv);
        hi_.resize(nv);
        occurs_.resize(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            lo_[v] = model.variables()[v].lower;
            hi_[v] = model.variables()[v].upper;
        }
        for (const Constraint& c : model.constraints()) {
            Row r{c.terms, std::nullopt, std::nullopt};
            if (c.relation != Relation::le) r.lb = c.rhs;
            if (c.relation != Relation::ge) r.ub = c.rhs;
            add_row(std::move(r));
        }
    }

    int add_row(Row row) {
        const int id = static_cast<int>(rows_.size());
        for (const Term& t : row.terms) occurs_[static_cast<std::size_t>(t.var)].push_back(id);
        rows_.push_back(std::move(row));
        queued_.push_back(0);
        return id;
    }

    Row& row(int id) { return rows_[static_cast<std::size_t>(id)]; }

    bool root_propagate() {
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) enqueue(r);
        return propagate();
    }

    /// The objective guides value ordering and is bounded by `bound_row`.
    void set_objective(const Objective* obj, int bound_row) {
        objective_ = obj;
        bound_row_ = bound_row;
        direction_.assign(lo_.size(), 0);
        if (!obj) return;
        for (const Term& t : obj->terms) {
            const bool low_first = (t.coef > 0) == (obj->sense == Sense::minimize);
            direction_[static_cast<std::size_t>(t.var)] = low_first ? -1 : 1;
        }
    }

    template <class Leaf>
    Flow dfs(const std::vector<int>& candidates, Leaf&& leaf) {
        if (over_limit()) return Flow::stop;
        ++nodes_;
        const int v = pick(candidates);
        if (v < 0) return leaf();
        const auto lo = lo_[static_cast<std::size_t>(v)];
        const auto hi = hi_[static_cast<std::size_t>(v)];
        const bool descending = !direction_.empty() && direction_[static_cast<std::size_t>(v)] > 0;
        for (std::int64_t k = 0; k <= hi - lo; ++k) {
            const std::int64_t val = descending ? hi - k : lo + k;
            const std::size_t mark = trail_.size();
            if (bound_row_ >= 0) enqueue(bound_row_);
            if (set_bounds(v, val, val) && propagate()) {
                if (dfs(candidates, leaf) == Flow::stop) {
                    undo(mark);
                    return Flow::stop;
                }
            }
            undo(mark);
        }
        return Flow::keep_going;
    }

    std::vector<std::int64_t> values() const { return lo_; }
    std::int64_t value(int v) const { return lo_[static_cast<std::size_t>(v)]; }
    bool aborted() const { return aborted_; }
    std::int64_t nodes() const { return nodes_; }
    const std::vector<int>& all_vars() {
        if (all_.size() != lo_.size()) {
            all_.resize(lo_.size());
            for (std::size_t v = 0; v < lo_.size(); ++v) all_[v] = static_cast<int>(v);
        }
        return all_;
    }

private:
    void enqueue(int r) {
        auto& q = queued_[static_cast<std::size_t>(r)];
        if (!q) {
            q = 1;
            queue_.push_back(r);
        }
    }

    bool set_bounds(int v, std::int64_t lo, std::int64_t hi) {
        auto& l = lo_[static_cast<std::size_t>(v)];
        auto& h = hi_[static_cast<std::size_t>(v)];
        lo = std::max(lo, l);
        hi = std::min(hi, h);
        if (lo > hi) return false;
        if (lo == l && hi == h) return true;
        trail_.push_back({v, l, h});
        l = lo;
        h = hi;
        for (int r : occurs_[static_cast<std::size_t>(v)]) enqueue(r);
        return true;
    }

    bool propagate() {
        bool ok = true;
        std::size_t head = 0;
        while (ok && head < queue_.size()) {
            const int r = queue_[head++];
            queued_[static_cast<std::size_t>(r)] = 0;
            ok = propagate_row(rows_[static_cast<std::size_t>(r)]);
        }
        for (std::size_t k = head; k < queue_.size(); ++k) queued_[static_cast<std::size_t>(queue_[k])] = 0;
        queue_.clear();
        return ok;
    }

    bool propagate_row(const Row& row) {
        i128 min_act = 0, max_act = 0;
        for (const Term& t : row.terms) {
            const i128 a = t.coef;
            const i128 l = lo_[static_cast<std::size_t>(t.var)], h = hi_[static_cast<std::size_t>(t.var)];
            min_act += a > 0 ? a * l : a * h;
            max_act += a > 0 ? a * h : a * l;
        }
        if (row.ub && min_act > *row.ub) return false;
        if (row.lb && max_act < *row.lb) return false;
        for (const Term& t : row.terms) {
            const i128 a = t.coef;
            const auto v = static_cast<std::size_t>(t.var);
            const i128 l = lo_[v], h = hi_[v];
            i128 new_lo = l, new_hi = h;
            if (row.ub) {
                // a*x <= ub - (min_act - own min contribution)
                const i128 slack = static_cast<i128>(*row.ub) - min_act + (a > 0 ? a * l : a * h);
                if (a > 0) new_hi = std::min(new_hi, floor_div(slack, a));
                else new_lo = std::max(new_lo, ceil_div(slack, a));
            }
            if (row.lb) {
                const i128 need = static_cast<i128>(*row.lb) - max_act + (a > 0 ? a * h : a * l);
                if (a > 0) new_lo = std::max(new_lo, ceil_div(need, a));
                else new_hi = std::min(new_hi, floor_div(need, a));
            }
            if (new_lo != l || new_hi != h) {
                if (!set_bounds(t.var, clamp64(new_lo), clamp64(new_hi))) return false;
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const auto& e = trail_.back();
            lo_[static_cast<std::size_t>(e.var)] = e.lo;
            hi_[static_cast<std::size_t>(e.var)] = e.hi;
            trail_.pop_back();
        }
    }

    int pick(const std::vector<int>& candidates) const {
        int best = -1;
        std::int64_t best_size = std::numeric_limits<std::int64_t>::max();
        for (int v : candidates) {
            const auto size = hi_[static_cast<std::size_t>(v)] - lo_[static_cast<std::size_t>(v)];
            if (size > 0 && size < best_size) {
                best = v;
                best_size = size;
            }
        }
        return best;
    }

    bool over_limit() {
        if (aborted_) return true;
        if (limits_.node_cap > 0 && nodes_ >= limits_.node_cap) aborted_ = true;
        if (limits_.time_cap_seconds > 0 && (nodes_ & 255) == 0) {
            const std::chrono::duration<double> elapsed = Clock::now() - start_;
            if (elapsed.count() > limits_.time_cap_seconds) aborted_ = true;
        }
        return aborted_;
    }

    struct TrailEntry {
        int var;
        std::int64_t lo, hi;
    };

    const LinearModel& model_;
    SolveLimits limits_;
    Clock::time_point start_;
    std::vector<std::int64_t> lo_, hi_;
    std::vector<Row> rows_;
    std::vector<std::vector<int>> occurs_;
    std::vector<char> queued_;
    std::vector<int> queue_;
    std::vector<TrailEntry> trail_;
    std::vector<int> all_;
    std::vector<int> direction_;
    const Objective* objective_ = nullptr;
    int bound_row_ = -1;
    std::int64_t nodes_ = 0;
    bool aborted_ = false;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_sound(const LinearModel& model, const std::vector<std::int64_t>& values) {
    if (model.first_violation(values) != -1) throw std::logic_error("solver produced an assignment violating the model");
}

struct PhaseOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<std::int64_t> assignment;
    std::int64_t value = 0;
    std::int64_t nodes = 0;
};

/// Optimizes one objective (or finds any solution when `obj` is null)
/// subject to the model plus `extra` rows.
PhaseOutcome run_phase(const LinearModel& model, const Objective* obj, const std::vector<Row>& extra,
                       const SolveLimits& limits, Clock::time_point start) {
    Engine engine(model, limits, start);
    for (const Row& r : extra) engine.add_row(r);
    int bound_row = -1;
    if (obj) bound_row = engine.add_row(Row{obj->terms, std::nullopt, std::nullopt});
    engine.set_objective(obj, bound_row);

    PhaseOutcome out;
    if (!engine.root_propagate()) return out;

    engine.dfs(engine.all_vars(), [&]() {
        out.assignment = engine.values();
        if (!obj) return Flow::stop;
        out.value = model.evaluate(obj->terms, out.assignment);
        Row& bound = engine.row(bound_row);
        if (obj->sense == Sense::minimize) bound.ub = out.value - 1;
        else bound.lb = out.value + 1;
        return Flow::keep_going;
    });
    out.nodes = engine.nodes();
    if (!out.assignment.empty()) check_sound(model, out.assignment);
    if (engine.aborted()) out.status = SolveStatus::limit_reached;
    else if (out.assignment.empty()) out.status = SolveStatus::infeasible;
    else out.status = obj ? SolveStatus::optimal : SolveStatus::feasible;
    return out;
}

}  // namespace

SolveResult solve(const LinearModel& model, const SolveLimits& limits) {
    if (model.objectives().size() > 1) return solve_lex(model, limits);
    const auto start = Clock::now();
    const Objective* obj = model.objectives().empty() ? nullptr : &model.objectives().front();
    PhaseOutcome p = run_phase(model, obj, {}, limits, start);
    SolveResult res;
    res.status = p.status;
    res.assignment = std::move(p.assignment);
    if (res.has_assignment())
        for (const auto& o : model.objectives()) res.objective_values.push_back(model.evaluate(o.terms, res.assignment));
    res.stats = {p.nodes, seconds_since(start)};
    return res;
}

SolveResult solve_lex(const LinearModel& model, const SolveLimits& limits) {
    if (model.objectives().empty()) throw std::invalid_argument("no objectives");
    const auto start = Clock::now();
    SolveResult res;
    std::vector<Row> fixed;
    for (const Objective& obj : model.objectives()) {
        PhaseOutcome p = run_phase(model, &obj, fixed, limits, start);
        res.stats.nodes += p.nodes;
        if (p.status != SolveStatus::optimal) {
            res.status = p.status;
            res.assignment = std::move(p.assignment);
            break;
        }
        res.status = SolveStatus::optimal;
        res.phase_optima.push_back(p.value);
        res.assignment = std::move(p.assignment);
        fixed.push_back(Row{obj.terms, p.value, p.value});
    }
    if (res.has_assignment())
        for (const auto& o : model.objectives()) res.objective_values.push_back(model.evaluate(o.terms, res.assignment));
    res.stats.seconds = seconds_since(start);
    return res;
}

Enumeration enumerate_feasible(const LinearModel& model, std::span<const int> projection, std::size_t cap,
                               const SolveLimits& limits) {
    if (cap < 1) throw std::invalid_argument("enumeration cap must be at least 1");
    const auto start = Clock::now();
    Enumeration out;
    for (int v : projection) {
        if (v < 0 || v >= model.num_vars()) throw std::invalid_argument("projection variable out of range");
        if (std::find(out.columns.begin(), out.columns.end(), v) == out.columns.end()) out.columns.push_back(v);
    }
    std::sort(out.columns.begin(), out.columns.end(), [&](int a, int b) {
        return model.variables()[static_cast<std::size_t>(a)].name < model.variables()[static_cast<std::size_t>(b)].name;
    });

    Engine engine(model, limits, start);
    engine.set_objective(nullptr, -1);
    if (engine.root_propagate()) {
        const std::vector<int> columns = out.columns;
        engine.dfs(columns, [&]() {
            // Projection fixed: does any completion exist?
            bool found = false;
            engine.dfs(engine.all_vars(), [&]() {
                check_sound(model, engine.values());
                found = true;
                return Flow::stop;
            });
            if (engine.aborted()) return Flow::stop;
            if (!found) return Flow::keep_going;
            std::vector<std::int64_t> row;
            for (int v : columns) row.push_back(engine.value(v));
            out.rows.push_back(std::move(row));
            if (out.rows.size() > cap) {
                out.truncated = true;
                out.rows.pop_back();
                return Flow::stop;
            }
            return Flow::keep_going;
        });
    }
    if (engine.aborted()) out.truncated = true;
    std::sort(out.rows.begin(), out.rows.end());
    out.stats = {engine.nodes(), seconds_since(start)};
    return out;
}

}  // namespace admit
