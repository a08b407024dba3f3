#include "report.hpp"

#include <algorithm>
#include <functional>

namespace admit::cli {

namespace {

Json college_names(const Instance& inst, const std::vector<int>& colleges) {
    Json out = Json::array();
    for (int j : colleges) out.push_back(inst.colleges[static_cast<std::size_t>(j)].id);
    return out;
}

std::vector<int> read_flags(const nlohmann::json& obj, std::size_t count, const std::function<int(const std::string&)>& index,
                            const char* what) {
    if (!obj.is_object()) throw ValidationError(std::string(what) + ": expected object");
    std::vector<int> out(count, 0);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const int k = index(it.key());
        if (k < 0) throw ValidationError(std::string(what) + ": unknown id '" + it.key() + "'");
        if (!it.value().is_number_integer()) throw ValidationError(std::string(what) + "." + it.key() + ": expected integer");
        out[static_cast<std::size_t>(k)] = it.value().get<int>();
    }
    return out;
}

}  // namespace

Json solution_json(const Instance& inst, const Solution& sol) {
    Json out;
    Json matching = Json::object();
    for (int i = 0; i < inst.num_applicants(); ++i) {
        const int e = sol.matching.entry.empty() ? -1 : sol.matching.entry[static_cast<std::size_t>(i)];
        Json target = nullptr;
        if (e >= 0) {
            const Application& a = inst.applications[static_cast<std::size_t>(e)];
            if (a.paired())
                target = Json::array({inst.colleges[static_cast<std::size_t>(a.college)].id, inst.colleges[static_cast<std::size_t>(a.second)].id});
            else
                target = inst.colleges[static_cast<std::size_t>(a.college)].id;
        }
        matching[inst.applicants[static_cast<std::size_t>(i)]] = target;
    }
    out["matching"] = matching;
    auto per_college = [&](const std::vector<int>& values) {
        Json obj = Json::object();
        for (std::size_t j = 0; j < values.size(); ++j) obj[inst.colleges[j].id] = values[j];
        return obj;
    };
    if (!sol.limits.empty()) out["score_limits"] = per_college(sol.limits);
    if (!sol.set_limits.empty()) {
        Json obj = Json::object();
        for (std::size_t p = 0; p < sol.set_limits.size(); ++p) obj[inst.common_quotas[p].id] = sol.set_limits[p];
        out["set_limits"] = obj;
    }
    if (!sol.open.empty()) out["open"] = per_college(sol.open);
    if (!sol.group_open.empty()) {
        Json obj = Json::object();
        for (std::size_t p = 0; p < sol.group_open.size(); ++p) obj[inst.lower_groups[p].id] = sol.group_open[p];
        out["group_open"] = obj;
    }
    return out;
}

Solution parse_solution(const Instance& inst, const nlohmann::json& doc) {
    const nlohmann::json& body = doc.contains("solution") ? doc.at("solution") : doc;
    if (!body.is_object()) throw ValidationError("solution: expected object");
    Solution sol;
    sol.matching = Matching::unmatched(inst);
    auto applicant = [&](const std::string& id) {
        auto it = std::find(inst.applicants.begin(), inst.applicants.end(), id);
        return it == inst.applicants.end() ? -1 : static_cast<int>(it - inst.applicants.begin());
    };
    auto college = [&](const std::string& id) { return inst.college_index(id); };
    if (body.contains("matching")) {
        const auto& m = body.at("matching");
        if (!m.is_object()) throw ValidationError("matching: expected object");
        for (auto it = m.begin(); it != m.end(); ++it) {
            const int i = applicant(it.key());
            if (i < 0) throw ValidationError("matching: unknown applicant '" + it.key() + "'");
            const auto& v = it.value();
            if (v.is_null()) continue;
            int j = -1, k = -1;
            if (v.is_string()) {
                j = college(v.get<std::string>());
            } else if (v.is_array() && v.size() == 2 && v[0].is_string() && v[1].is_string()) {
                j = college(v[0].get<std::string>());
                k = college(v[1].get<std::string>());
            } else {
                throw ValidationError("matching." + it.key() + ": expected college id, pair of ids, or null");
            }
            int found = -1;
            for (int e : inst.list(i)) {
                const Application& a = inst.applications[static_cast<std::size_t>(e)];
                const bool hit = k < 0 ? (!a.paired() && a.college == j)
                                       : (a.paired() && ((a.college == j && a.second == k) || (a.college == k && a.second == j)));
                if (hit) found = e;
            }
            if (found < 0) throw ValidationError("matching." + it.key() + ": applicant has no such application");
            sol.matching.entry[static_cast<std::size_t>(i)] = found;
        }
    }
    const std::size_t m = inst.colleges.size();
    if (body.contains("score_limits")) sol.limits = read_flags(body.at("score_limits"), m, college, "score_limits");
    if (body.contains("open")) sol.open = read_flags(body.at("open"), m, college, "open");
    auto set_index = [&](const std::string& id) {
        for (std::size_t p = 0; p < inst.common_quotas.size(); ++p)
            if (inst.common_quotas[p].id == id) return static_cast<int>(p);
        return -1;
    };
    auto group_index = [&](const std::string& id) {
        for (std::size_t p = 0; p < inst.lower_groups.size(); ++p)
            if (inst.lower_groups[p].id == id) return static_cast<int>(p);
        return -1;
    };
    if (body.contains("set_limits")) sol.set_limits = read_flags(body.at("set_limits"), inst.common_quotas.size(), set_index, "set_limits");
    if (body.contains("group_open")) sol.group_open = read_flags(body.at("group_open"), inst.lower_groups.size(), group_index, "group_open");
    return sol;
}

Json report_json(const StabilityReport& report) {
    Json out;
    out["verdict"] = std::string(to_string(report.verdict));
    Json list = Json::array();
    for (const auto& v : report.violations) {
        Json item;
        item["kind"] = std::string(to_string(v.kind));
        item["entities"] = v.entities;
        item["explanation"] = v.explanation;
        list.push_back(item);
    }
    out["violations"] = list;
    return out;
}

Json fixing_json(const Instance& inst, const FixingResult& fixing) {
    Json out;
    out["must_open"] = college_names(inst, fixing.must_open);
    out["must_close"] = college_names(inst, fixing.must_close);
    out["iterations"] = fixing.iterations;
    Json trace = Json::array();
    for (const auto& round : fixing.trace) {
        Json r;
        r["open"] = college_names(inst, round.open);
        r["closed"] = college_names(inst, round.closed);
        trace.push_back(r);
    }
    out["trace"] = trace;
    return out;
}

Json heuristic_json(const Instance& inst, const HeuristicResult& result) {
    Json out;
    out["closed"] = college_names(inst, result.closed);
    Json trace = Json::array();
    for (const auto& c : result.trace) {
        Json r;
        r["college"] = inst.colleges[static_cast<std::size_t>(c.college)].id;
        r["admitted"] = c.admitted;
        r["lower"] = inst.colleges[static_cast<std::size_t>(c.college)].lower;
        trace.push_back(r);
    }
    out["trace"] = trace;
    return out;
}

Json stats_json(const SolveStats& stats) {
    Json out;
    out["nodes"] = stats.nodes;
    return out;
}

}  // namespace admit::cli
