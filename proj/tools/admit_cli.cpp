// Command-line front end: validate, generate, solve, check, compare, enumerate.
//
// Exit codes: 0 success, 1 usage or validation error, 2 proven infeasibility,
// 3 solver and oracle disagree.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "admit/builders.hpp"
#include "admit/generator.hpp"
#include "admit/io.hpp"
#include "report.hpp"

namespace {

using namespace admit;
using cli::Json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kDisagree = 3;

struct SolveArgs {
    std::string file;
    std::string model = "classical";
    std::string mode = "strict";
    std::string objective = "none";
    bool ties = false;
    bool lower = false;
    bool common = false;
    std::string group_stability = "enforce";
    std::string closure = "min-limits";
    bool preprocess = false;
    std::int64_t node_cap = 0;
    double time_cap = 0;
    std::string dump_lp;
};

void print(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

Instance load(const std::string& path) { return parse_instance(read_file(path)); }

/// The model for a solve request, plus the oracle variant that audits it
/// (empty when only feasibility can be audited).
struct Plan {
    LinearModel model;
    std::optional<Variant> variant;
};

Plan plan(const Instance& inst, const SolveArgs& a) {
    const ObjectiveKind objective = parse_objective(a.objective);
    if (a.model != "combined" && (a.lower || a.common)) throw std::invalid_argument("--lower/--common apply to --model combined");
    if (a.model != "combined" && a.model != "classical" && a.ties)
        throw std::invalid_argument("--ties applies to --model classical and --model combined");
    if (a.model == "classical") {
        return {build_classical(inst, {a.ties, objective}), a.ties ? Variant::weak_ties : Variant::classical};
    }
    if (a.model == "scorelimits") {
        const ScoreLimitMode mode = parse_mode(a.mode);
        return {build_scorelimits(inst, mode, objective), mode == ScoreLimitMode::strict ? Variant::classical : Variant::scorelimits_h};
    }
    if (a.model == "lower") return {build_lower(inst, objective), Variant::lower};
    if (a.model == "common") return {build_common(inst, objective), Variant::common};
    if (a.model == "paired") return {build_paired(inst, objective), Variant::paired};
    if (a.model == "combined") {
        if (objective != ObjectiveKind::none) throw std::invalid_argument("--objective is fixed by the policy for --model combined");
        CombinedPolicy p;
        p.ties = a.ties;
        p.lower = a.lower;
        p.common = a.common;
        if (a.group_stability == "enforce") p.group_stability = GroupStability::enforce;
        else if (a.group_stability == "drop") p.group_stability = GroupStability::drop_with_lex_objective;
        else throw std::invalid_argument("unknown --group-stability '" + a.group_stability + "'");
        if (a.closure == "min-limits") p.closure = ClosureRule::min_limits;
        else if (a.closure == "witnesses") p.closure = ClosureRule::witnesses;
        else throw std::invalid_argument("unknown --closure '" + a.closure + "'");
        std::optional<Variant> variant;
        if (p.group_stability == GroupStability::enforce) {
            const int on = p.ties + p.lower + p.common;
            if (on == 0) variant = Variant::classical;
            else if (on == 1 && p.ties) variant = Variant::scorelimits_h;
            else if (on == 1 && p.lower) variant = Variant::lower;
            else if (on == 1 && p.common) variant = Variant::common;
        }
        return {build_combined(inst, p), variant};
    }
    throw std::invalid_argument("unknown --model '" + a.model + "'");
}

int run_solve(const SolveArgs& a, const std::string& echo) {
    const Instance inst = load(a.file);
    Plan pl = plan(inst, a);
    std::optional<FixingResult> fixing;
    if (a.preprocess) {
        if (a.model != "lower") throw std::invalid_argument("--preprocess applies to --model lower");
        fixing = fix_iterate(inst);
        apply_fixing(pl.model, *fixing);
    }
    if (!a.dump_lp.empty()) {
        std::ofstream lp(a.dump_lp);
        if (!lp) throw std::runtime_error("cannot write '" + a.dump_lp + "'");
        write_lp(pl.model, lp);
    }
    const auto start = std::chrono::steady_clock::now();
    const SolveResult res = solve(pl.model, {a.node_cap, a.time_cap});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json out;
    out["command"] = echo;
    out["instance_digest"] = instance_digest(inst);
    out["model"] = pl.model.name;
    out["variant"] = pl.variant ? Json(std::string(to_string(*pl.variant))) : Json("feasibility");
    out["status"] = std::string(to_string(res.status));
    int code = kOk;
    if (res.has_assignment()) {
        const Solution sol = extract_solution(pl.model, res.assignment);
        out["solution"] = cli::solution_json(inst, sol);
        out["objective_values"] = res.objective_values;
        out["phase_optima"] = res.phase_optima;
        const StabilityReport report = pl.variant ? check(inst, sol, *pl.variant) : check_feasibility(inst, sol);
        const Json audit = cli::report_json(report);
        out["verdict"] = audit["verdict"];
        out["violations"] = audit["violations"];
        out["oracle_confirmed"] = report.verdict == Verdict::stable;
        if (report.verdict != Verdict::stable) code = kDisagree;
    } else if (res.status == SolveStatus::infeasible) {
        out["solution"] = nullptr;
        out["verdict"] = "no_stable_solution";
        Json confirmed = nullptr;
        if (pl.variant && !fixing && candidate_count(inst, *pl.variant) <= kEnumerationGuard)
            confirmed = enumerate_stable(inst, *pl.variant, 1).solutions.empty();
        out["oracle_confirmed"] = confirmed;
        code = confirmed.is_boolean() && !confirmed.get<bool>() ? kDisagree : kInfeasible;
    } else {
        out["solution"] = nullptr;
        out["verdict"] = nullptr;
        out["oracle_confirmed"] = nullptr;
    }
    out["preprocessing"] = fixing ? cli::fixing_json(inst, *fixing) : Json(nullptr);
    out["solver"] = cli::stats_json(res.stats);
    out["timing_seconds"] = seconds;
    print(out);
    if (code == kDisagree) std::cerr << "error: solver result rejected by the stability oracle\n";
    return code;
}

int run_check(const std::string& variant, const std::string& inst_file, const std::string& sol_file, const std::string& echo) {
    const Instance inst = load(inst_file);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(sol_file));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("solution: ") + e.what());
    }
    const Solution sol = cli::parse_solution(inst, doc);
    const StabilityReport report = variant == "feasibility" ? check_feasibility(inst, sol) : check(inst, sol, parse_variant(variant));
    Json out;
    out["command"] = echo;
    out["instance_digest"] = instance_digest(inst);
    out["variant"] = variant;
    const Json audit = cli::report_json(report);
    out["verdict"] = audit["verdict"];
    out["violations"] = audit["violations"];
    print(out);
    return kOk;
}

int run_compare(const std::string& file, std::int64_t node_cap, double time_cap, const std::string& echo) {
    const Instance inst = load(file);
    Json out;
    out["command"] = echo;
    out["instance_digest"] = instance_digest(inst);

    const HeuristicResult h = lower_quota_heuristic(inst);
    Solution hs;
    hs.matching = h.matching;
    Json heur = cli::heuristic_json(inst, h);
    heur["solution"] = cli::solution_json(inst, hs);
    heur["verdict"] = std::string(to_string(check(inst, hs, Variant::lower).verdict));
    out["heuristic"] = heur;

    const LinearModel model = build_lower(inst);
    const SolveResult res = solve(model, {node_cap, time_cap});
    Json ip;
    ip["status"] = std::string(to_string(res.status));
    int code = kOk;
    if (res.has_assignment()) {
        const Solution sol = extract_solution(model, res.assignment);
        ip["solution"] = cli::solution_json(inst, sol);
        const Verdict v = check(inst, sol, Variant::lower).verdict;
        ip["verdict"] = std::string(to_string(v));
        if (v != Verdict::stable) code = kDisagree;
    } else {
        ip["solution"] = nullptr;
        ip["verdict"] = res.status == SolveStatus::infeasible ? Json("no_stable_solution") : Json(nullptr);
        if (res.status == SolveStatus::infeasible) code = kInfeasible;
    }
    ip["solver"] = cli::stats_json(res.stats);
    out["ip"] = ip;
    print(out);
    return code;
}

int run_enumerate(const std::string& file, const std::string& variant, const std::string& model_name, const std::string& mode,
                  std::size_t cap, bool serial, const std::string& echo) {
    const Instance inst = load(file);
    Json out;
    out["command"] = echo;
    out["instance_digest"] = instance_digest(inst);
    Json list = Json::array();
    bool truncated = false;
    if (!variant.empty()) {
        const Variant v = parse_variant(variant);
        const StableSet set = serial ? enumerate_stable_serial(inst, v, cap) : enumerate_stable(inst, v, cap);
        for (const auto& s : set.solutions) list.push_back(cli::solution_json(inst, s));
        truncated = set.truncated;
        out["variant"] = variant;
    } else {
        SolveArgs a;
        a.model = model_name;
        a.mode = mode;
        const Plan pl = plan(inst, a);
        std::vector<int> proj = assignment_vars(pl.model);
        for (int v : limit_vars(pl.model)) proj.push_back(v);
        const Enumeration en = enumerate_feasible(pl.model, proj, cap);
        for (const auto& row : en.rows) {
            Json r = Json::object();
            for (std::size_t c = 0; c < en.columns.size(); ++c)
                r[pl.model.variables()[static_cast<std::size_t>(en.columns[c])].name] = row[c];
            list.push_back(r);
        }
        truncated = en.truncated;
        out["model"] = pl.model.name;
    }
    out["count"] = list.size();
    out["truncated"] = truncated;
    out["solutions"] = list;
    print(out);
    return kOk;
}

int run_validate(const std::string& file, const std::string& echo) {
    const Instance inst = load(file);
    Json out;
    out["command"] = echo;
    out["instance_digest"] = instance_digest(inst);
    out["valid"] = true;
    out["applicants"] = inst.num_applicants();
    out["colleges"] = inst.num_colleges();
    out["applications"] = inst.num_applications();
    out["ties"] = inst.has_ties();
    out["paired"] = inst.has_paired();
    out["lower_quotas"] = inst.has_lower_quotas();
    out["common_quotas"] = inst.common_quotas.size();
    out["nested"] = is_nested(inst);
    print(out);
    return kOk;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int k = 1; k < argc; ++k) {
        if (k > 1) s += ' ';
        s += argv[k];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for college admissions with score-limits, lower, common quotas and paired applications"};
    app.require_subcommand(1);
    const std::string echo = join_args(argc, argv);

    std::string file;
    auto* validate = app.add_subcommand("validate", "Parse and validate an instance");
    validate->add_option("instance", file, "Instance file")->required();

    GenConfig gen;
    std::string topology = "none", output;
    auto* generate = app.add_subcommand("generate", "Generate a seeded random instance");
    generate->add_option("--applicants", gen.applicants)->check(CLI::NonNegativeNumber);
    generate->add_option("--colleges", gen.colleges)->check(CLI::NonNegativeNumber);
    generate->add_option("--max-score", gen.max_score)->check(CLI::NonNegativeNumber);
    generate->add_option("--min-list", gen.min_list)->check(CLI::NonNegativeNumber);
    generate->add_option("--max-list", gen.max_list)->check(CLI::NonNegativeNumber);
    generate->add_option("--tie-density", gen.tie_density)->check(CLI::Range(0.0, 1.0));
    generate->add_option("--min-upper", gen.min_upper)->check(CLI::PositiveNumber);
    generate->add_option("--max-upper", gen.max_upper)->check(CLI::PositiveNumber);
    generate->add_option("--lower-probability", gen.lower_probability)->check(CLI::Range(0.0, 1.0));
    generate->add_option("--topology", topology)->check(CLI::IsMember({"none", "nested", "random"}));
    generate->add_option("--quota-sets", gen.quota_sets)->check(CLI::NonNegativeNumber);
    generate->add_option("--paired-probability", gen.paired_probability)->check(CLI::Range(0.0, 1.0));
    generate->add_option("--lower-groups", gen.lower_groups)->check(CLI::NonNegativeNumber);
    generate->add_option("--seed", gen.seed);
    generate->add_option("-o,--output", output, "Write to a file instead of standard output");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Build a model, solve it exactly and audit the result");
    solve_cmd->add_option("instance", sa.file)->required();
    solve_cmd->add_option("--model", sa.model)->check(CLI::IsMember({"classical", "scorelimits", "lower", "common", "paired", "combined"}));
    solve_cmd->add_option("--mode", sa.mode, "Score-limit mode")->check(CLI::IsMember({"strict", "ties-min", "ties-full"}));
    solve_cmd->add_option("--objective", sa.objective)
        ->check(CLI::IsMember({"none", "applicant-optimal", "applicant-pessimal", "min-score-limits", "lex-matched-then-limits"}));
    solve_cmd->add_flag("--ties", sa.ties, "Allow ties (classical: weak stability; combined: policy flag)");
    solve_cmd->add_flag("--lower", sa.lower, "Combined policy: lower quotas");
    solve_cmd->add_flag("--common", sa.common, "Combined policy: common quotas");
    solve_cmd->add_option("--group-stability", sa.group_stability)->check(CLI::IsMember({"enforce", "drop"}));
    solve_cmd->add_option("--closure", sa.closure)->check(CLI::IsMember({"min-limits", "witnesses"}));
    solve_cmd->add_flag("--preprocess", sa.preprocess, "Fix colleges that must be open or closed (lower model)");
    solve_cmd->add_option("--node-cap", sa.node_cap)->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--time-cap", sa.time_cap, "Seconds")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--dump-lp", sa.dump_lp, "Write the model in LP format");

    std::string variant, solution_file;
    auto* check_cmd = app.add_subcommand("check", "Audit a solution against a stability definition");
    check_cmd->add_option("--variant", variant)
        ->required()
        ->check(CLI::IsMember({"classical", "weak_ties", "scorelimits_H", "lower", "common", "paired", "feasibility"}));
    check_cmd->add_option("instance", file)->required();
    check_cmd->add_option("solution", solution_file)->required();

    std::int64_t node_cap = 0;
    double time_cap = 0;
    auto* compare = app.add_subcommand("compare", "Closing heuristic versus the lower-quota model");
    compare->add_option("instance", file)->required();
    compare->add_option("--node-cap", node_cap)->check(CLI::NonNegativeNumber);
    compare->add_option("--time-cap", time_cap)->check(CLI::NonNegativeNumber);

    std::string enum_variant, enum_model, enum_mode = "strict";
    std::size_t cap = 1000;
    bool serial = false;
    auto* enumerate = app.add_subcommand("enumerate", "List every stable solution (oracle) or feasible projection (model)");
    enumerate->add_option("instance", file)->required();
    auto* ev = enumerate->add_option("--variant", enum_variant)
                   ->check(CLI::IsMember({"classical", "weak_ties", "scorelimits_H", "lower", "common", "paired"}));
    auto* em = enumerate->add_option("--model", enum_model)->check(CLI::IsMember({"classical", "scorelimits", "lower", "common", "paired"}));
    ev->excludes(em);
    enumerate->add_option("--mode", enum_mode)->check(CLI::IsMember({"strict", "ties-min", "ties-full"}));
    enumerate->add_option("--cap", cap)->check(CLI::PositiveNumber);
    enumerate->add_flag("--serial", serial, "Use the single-threaded oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return run_validate(file, echo);
        if (*generate) {
            gen.topology = parse_topology(topology);
            const std::string text = serialize_instance(admit::generate(gen));
            if (output.empty()) {
                std::cout << text << '\n';
            } else {
                std::ofstream out(output);
                if (!out) throw std::runtime_error("cannot write '" + output + "'");
                out << text << '\n';
            }
            return kOk;
        }
        if (*solve_cmd) return run_solve(sa, echo);
        if (*check_cmd) return run_check(variant, file, solution_file, echo);
        if (*compare) return run_compare(file, node_cap, time_cap, echo);
        if (*enumerate) {
            if (enum_variant.empty() && enum_model.empty()) throw std::invalid_argument("enumerate needs --variant or --model");
            return run_enumerate(file, enum_variant, enum_model, enum_mode, cap, serial, echo);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
