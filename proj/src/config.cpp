#include "sovlab/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sovlab {

const std::vector<std::string> kAllSuites = {"yangian", "gt", "bop", "sov", "appendixA", "appendixB", "bethe"};

using nlohmann::json;

static Rat parse_rat(const json& j, const char* what) {
    try {
        if (j.is_number_integer()) return Rat((long)j.get<long long>());
        if (j.is_string()) return rat_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: bad rational for ") + what + ": " + e.what());
    }
    throw std::invalid_argument(std::string("config: ") + what + " must be an integer or a \"p/q\" string");
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    RunConfig c;
    if (!j.contains("n") || !j.contains("L")) throw std::invalid_argument("config: need fields n and L");
    c.spec.n = j.at("n").get<int>();
    c.spec.L = j.at("L").get<int>();
    for (const auto& row : j.at("weights")) {
        std::vector<long> nu;
        for (const auto& v : row) nu.push_back(v.get<long>());
        c.spec.weights.push_back(std::move(nu));
    }
    for (const auto& v : j.at("theta")) c.spec.theta.push_back(parse_rat(v, "theta"));
    c.spec.hbar = j.contains("hbar") ? parse_rat(j.at("hbar"), "hbar") : Rat(1);
    for (const auto& v : j.at("z")) c.spec.z.push_back(parse_rat(v, "z"));
    for (const auto& v : j.at("w")) c.spec.w.push_back(parse_rat(v, "w"));
    if (j.contains("precision")) c.precision = j.at("precision").get<unsigned>();
    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("suites")) {
        c.suites.clear();
        for (const auto& s : j.at("suites")) {
            std::string name = s.get<std::string>();
            bool known = false;
            for (const auto& k : kAllSuites) known = known || (k == name);
            if (!known) throw std::invalid_argument("config: unknown suite '" + name + "'");
            c.suites.push_back(name);
        }
    }
    if (c.precision < 30) throw std::invalid_argument("config: precision must be at least 30 decimal digits");
    c.spec.validate(c.wants("bethe"));
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

RunConfig RunConfig::preset(const std::string& name) {
    if (name == "t0")
        return from_json_text(R"({"n":2,"L":1,"weights":[[1,0]],"theta":["0"],"hbar":"1",
                                  "z":["2","3"],"w":["7"],"precision":60,"seed":1})");
    if (name == "t1")
        return from_json_text(R"({"n":3,"L":2,"weights":[[2,1,0],[2,1,0]],"theta":["0","1/3"],"hbar":"1",
                                  "z":["2","3","5"],"w":["7","11"],"precision":60,"seed":1})");
    if (name == "qdef")
        return from_json_text(R"({"n":3,"L":2,"weights":[[1,0,0],[1,0,0]],"theta":["0","1/3"],"hbar":"1",
                                  "z":["2","3","5"],"w":["7","11"],"precision":60,"seed":1})");
    if (name == "qconj")
        return from_json_text(R"({"n":3,"L":2,"weights":[[1,1,0],[1,1,0]],"theta":["0","1/3"],"hbar":"1",
                                  "z":["2","3","5"],"w":["7","11"],"precision":60,"seed":1})");
    throw std::invalid_argument("unknown preset '" + name + "' (available: t0, t1, qdef, qconj)");
}

std::string RunConfig::to_json_text() const {
    json j;
    j["n"] = spec.n;
    j["L"] = spec.L;
    j["weights"] = spec.weights;
    json th = json::array(), zz = json::array(), ww = json::array();
    for (const auto& t : spec.theta) th.push_back(rat_to_string(t));
    for (const auto& v : spec.z) zz.push_back(rat_to_string(v));
    for (const auto& v : spec.w) ww.push_back(rat_to_string(v));
    j["theta"] = th;
    j["hbar"] = rat_to_string(spec.hbar);
    j["z"] = zz;
    j["w"] = ww;
    j["precision"] = precision;
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["suites"] = suites;
    return j.dump(2);
}

bool RunConfig::wants(const std::string& suite) const {
    for (const auto& s : suites)
        if (s == suite) return true;
    return false;
}

}  // namespace sovlab
