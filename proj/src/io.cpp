#include "ot1d/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ot1d {

using json = nlohmann::json;

namespace {

void load_side(const json& arr, std::vector<WeightedPoint>& out, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number())
            throw ParseError(std::string(what) + " entries must be [position, mass]");
        double pos = item[0].get<double>();
        double mass = item[1].get<double>();
        if (std::isnan(pos) || std::isinf(pos)) throw ParseError("non-finite position");
        out.push_back({pos, mass});
    }
}

Problem parse_lines(const std::string& text) {
    Problem raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        double pos, mass;
        if ((tag != "s" && tag != "d") || !(ls >> pos >> mass))
            throw ParseError("malformed record at line " + std::to_string(lineno));
        std::string extra;
        if (ls >> extra) throw ParseError("trailing junk at line " + std::to_string(lineno));
        if (std::isnan(pos) || std::isinf(pos))
            throw ParseError("non-finite position at line " + std::to_string(lineno));
        (tag == "s" ? raw.supplies : raw.demands).push_back({pos, mass});
    }
    return raw;
}

}  // namespace

Problem parse_problem_text(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    Problem raw;
    if (first != std::string::npos && text[first] == '{') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what());
        }
        if (!doc.contains("supplies") || !doc.contains("demands"))
            throw ParseError("problem JSON needs 'supplies' and 'demands'");
        load_side(doc["supplies"], raw.supplies, "supplies");
        load_side(doc["demands"], raw.demands, "demands");
    } else {
        raw = parse_lines(text);
    }
    return canonicalize(raw);
}

Problem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

CostSpec parse_cost_spec(const std::string& spec) {
    if (spec == "log") return CostSpec::log_cost();
    const std::string prefix = "power:";
    if (spec.rfind(prefix, 0) == 0) {
        double alpha;
        try {
            std::size_t used = 0;
            alpha = std::stod(spec.substr(prefix.size()), &used);
            if (used != spec.size() - prefix.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
            throw ParseError("bad cost spec: " + spec);
        }
        if (!(alpha > 0.0 && alpha < 1.0))
            throw ParseError("power cost needs alpha in (0,1): " + spec);
        return CostSpec::power(alpha);
    }
    throw ParseError("unknown cost spec: " + spec + " (expected power:<alpha> or log)");
}

std::string result_to_json(const SolveResult& result, const Problem& problem,
                           bool include_stats) {
    json doc;
    json plan = json::array();
    for (const auto& e : result.plan.entries)
        plan.push_back(json::array({e.supply, e.demand, e.mass}));
    doc["plan"] = std::move(plan);
    if (std::isinf(result.plan.total_cost))
        doc["total_cost"] = result.plan.total_cost > 0 ? "inf" : "-inf";
    else
        doc["total_cost"] = result.plan.total_cost;
    doc["orientation_swapped"] = problem.orientation_swapped;
    doc["stats"] = {{"additions", result.stats.additions},
                    {"cost_evaluations", result.stats.cost_evaluations}};
    if (include_stats)
        doc["diagnostics"] = {{"num_strata", result.num_strata},
                              {"num_chains", result.num_chains},
                              {"num_lone_supplies", result.num_lone_supplies}};
    return doc.dump(2) + "\n";
}

}  // namespace ot1d
