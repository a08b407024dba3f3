#include "admit/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace admit {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path + "." + key, "missing");
    return *it;
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected integer");
    auto x = v.get<long long>();
    if (x < -1'000'000'000LL || x > 1'000'000'000LL) schema_error(path, "integer out of range");
    return static_cast<int>(x);
}

std::string as_id(const json& v, const std::string& path) {
    if (!v.is_string()) schema_error(path, "expected string identifier");
    return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) schema_error(path, "expected array");
    return v;
}

std::vector<int> members(const json& v, const std::string& path, const std::map<std::string, int>& colleges) {
    std::vector<int> out;
    const json& arr = as_array(v, path);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        auto id = as_id(arr[k], p);
        auto it = colleges.find(id);
        if (it == colleges.end()) schema_error(p, "unknown college '" + id + "'");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("document: not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) schema_error("document", "expected object");

    Instance inst;
    inst.max_score = as_int(field(doc, "max_score", "document"), "max_score");

    std::map<std::string, int> college_ids;
    const json& cols = as_array(field(doc, "colleges", "document"), "colleges");
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::string p = "colleges[" + std::to_string(k) + "]";
        College c;
        c.id = as_id(field(cols[k], "id", p), p + ".id");
        c.upper = as_int(field(cols[k], "upper", p), p + ".upper");
        if (cols[k].contains("lower")) c.lower = as_int(cols[k]["lower"], p + ".lower");
        college_ids.emplace(c.id, static_cast<int>(k));
        inst.colleges.push_back(std::move(c));
    }

    const json& apps = as_array(field(doc, "applicants", "document"), "applicants");
    for (std::size_t k = 0; k < apps.size(); ++k) {
        const std::string p = "applicants[" + std::to_string(k) + "]";
        inst.applicants.push_back(as_id(field(apps[k], "id", p), p + ".id"));
        const json& list = as_array(field(apps[k], "list", p), p + ".list");
        for (std::size_t r = 0; r < list.size(); ++r) {
            const std::string q = p + ".list[" + std::to_string(r) + "]";
            const json& entry = list[r];
            if (!entry.is_object()) schema_error(q, "expected object");
            Application a;
            a.applicant = static_cast<int>(k);
            a.rank = as_int(field(entry, "rank", q), q + ".rank");
            const bool has_college = entry.contains("college");
            const bool has_pair = entry.contains("pair");
            if (has_college == has_pair) schema_error(q, "exactly one of 'college' or 'pair' required");
            if (has_college) {
                auto id = as_id(entry["college"], q + ".college");
                auto it = college_ids.find(id);
                if (it == college_ids.end()) schema_error(q + ".college", "unknown college '" + id + "'");
                a.college = it->second;
                a.score = as_int(field(entry, "score", q), q + ".score");
                if (entry.contains("scores")) schema_error(q + ".scores", "only allowed on paired entries");
            } else {
                auto pair = members(entry["pair"], q + ".pair", college_ids);
                if (pair.size() != 2) schema_error(q + ".pair", "expected two colleges");
                a.college = pair[0];
                a.second = pair[1];
                const json& scores = as_array(field(entry, "scores", q), q + ".scores");
                if (scores.size() != 2) schema_error(q + ".scores", "expected two scores");
                a.score = as_int(scores[0], q + ".scores[0]");
                a.second_score = as_int(scores[1], q + ".scores[1]");
                if (entry.contains("score")) schema_error(q + ".score", "paired entries use 'scores'");
            }
            inst.applications.push_back(a);
        }
    }

    if (doc.contains("common_quotas")) {
        const json& sets = as_array(doc["common_quotas"], "common_quotas");
        for (std::size_t k = 0; k < sets.size(); ++k) {
            const std::string p = "common_quotas[" + std::to_string(k) + "]";
            QuotaSet q;
            q.id = as_id(field(sets[k], "id", p), p + ".id");
            q.members = members(field(sets[k], "members", p), p + ".members", college_ids);
            q.upper = as_int(field(sets[k], "upper", p), p + ".upper");
            inst.common_quotas.push_back(std::move(q));
        }
    }
    if (doc.contains("lower_groups")) {
        const json& groups = as_array(doc["lower_groups"], "lower_groups");
        for (std::size_t k = 0; k < groups.size(); ++k) {
            const std::string p = "lower_groups[" + std::to_string(k) + "]";
            LowerGroup g;
            g.id = as_id(field(groups[k], "id", p), p + ".id");
            g.members = members(field(groups[k], "members", p), p + ".members", college_ids);
            g.lower = as_int(field(groups[k], "lower", p), p + ".lower");
            inst.lower_groups.push_back(std::move(g));
        }
    }

    inst.finalize();
    return inst;
}

std::string serialize_instance(const Instance& inst, int indent) {
    auto ids = [&](const std::vector<int>& cs) {
        ordered_json arr = ordered_json::array();
        for (int j : cs) arr.push_back(inst.colleges[static_cast<std::size_t>(j)].id);
        return arr;
    };

    ordered_json doc;
    doc["max_score"] = inst.max_score;
    doc["colleges"] = ordered_json::array();
    for (const auto& c : inst.colleges) {
        ordered_json o;
        o["id"] = c.id;
        o["upper"] = c.upper;
        if (c.lower != 0) o["lower"] = c.lower;
        doc["colleges"].push_back(std::move(o));
    }
    std::vector<ordered_json> lists(inst.applicants.size(), ordered_json::array());
    for (const auto& a : inst.applications) {
        ordered_json o;
        o["rank"] = a.rank;
        if (a.paired()) {
            o["pair"] = ids({a.college, a.second});
            o["scores"] = {a.score, a.second_score};
        } else {
            o["college"] = inst.colleges[static_cast<std::size_t>(a.college)].id;
            o["score"] = a.score;
        }
        lists[static_cast<std::size_t>(a.applicant)].push_back(std::move(o));
    }
    doc["applicants"] = ordered_json::array();
    for (std::size_t i = 0; i < inst.applicants.size(); ++i) {
        ordered_json o;
        o["id"] = inst.applicants[i];
        o["list"] = std::move(lists[i]);
        doc["applicants"].push_back(std::move(o));
    }
    doc["common_quotas"] = ordered_json::array();
    for (const auto& q : inst.common_quotas)
        doc["common_quotas"].push_back({{"id", q.id}, {"members", ids(q.members)}, {"upper", q.upper}});
    doc["lower_groups"] = ordered_json::array();
    for (const auto& g : inst.lower_groups)
        doc["lower_groups"].push_back({{"id", g.id}, {"members", ids(g.members)}, {"lower", g.lower}});
    return doc.dump(indent);
}

std::string instance_digest(const Instance& inst) {
    const std::string text = serialize_instance(inst, -1);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace admit
