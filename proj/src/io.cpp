#include "gathering/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gathering {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

json config_points_json(const Configuration& S) {
    json arr = json::array();
    for (const auto& [p, c] : S.points()) arr.push_back(json::array({p.str(), c}));
    return arr;
}

Configuration config_from_points_json(const json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("config json: expected an array");
    Configuration S;
    for (const json& item : arr) {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument("config json: expected [angle, count] pairs");
        S.add(Angle::parse(item[0].get<std::string>()), item[1].get<int>());
    }
    return S;
}

json angle_list_json(const Configuration& S) {
    json arr = json::array();
    for (const auto& [p, c] : S.points()) {
        if (c != 1) throw std::invalid_argument("certificate json: expected a plain set");
        arr.push_back(p.str());
    }
    return arr;
}

Configuration set_from_angle_list(const json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("certificate json: expected an array");
    Configuration S;
    for (const json& item : arr) S.add(Angle::parse(item.get<std::string>()));
    return S;
}

json rational_list_json(const std::vector<Rational>& xs) {
    json arr = json::array();
    for (const Rational& x : xs) arr.push_back(rational_str(x));
    return arr;
}

std::vector<Rational> rational_list_from_json(const json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("certificate json: expected an array");
    std::vector<Rational> xs;
    for (const json& item : arr) xs.push_back(parse_rational(item.get<std::string>()));
    return xs;
}

json parse_line(const std::string& line, const char* what) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::invalid_argument(std::string(what) + ": malformed json");
    return j;
}

}  // namespace

Configuration parse_config(const std::string& text) {
    Configuration S;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string angle_tok, mult_tok, extra;
        fields >> angle_tok;
        int count = 1;
        if (fields >> mult_tok) {
            if (mult_tok.size() < 2 || mult_tok[0] != 'x')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected multiplicity suffix xK");
            count = std::stoi(mult_tok.substr(1));
            if (count < 1)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": multiplicity must be positive");
        }
        if (fields >> extra)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": trailing tokens");
        try {
            S.add(Angle::parse(angle_tok), count);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return S;
}

std::string format_config(const Configuration& S) {
    std::string out;
    for (const auto& [p, c] : S.points()) {
        out += p.str();
        if (c != 1) out += " x" + std::to_string(c);
        out += '\n';
    }
    return out;
}

Configuration load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void save_config(const Configuration& S, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << format_config(S);
}

std::string format_trace_header(const TraceHeader& header) {
    json j;
    j["algorithm"] = header.algorithm;
    j["n"] = header.n;
    j["scheduler"] = header.scheduler;
    j["seed"] = header.seed;
    j["step_cap"] = header.step_cap;
    j["theta"] = header.vis.str();
    return j.dump();
}

TraceHeader parse_trace_header(const std::string& line) {
    const json j = parse_line(line, "trace header");
    try {
        TraceHeader h;
        h.algorithm = j.at("algorithm").get<std::string>();
        h.n = j.at("n").get<int>();
        h.scheduler = j.at("scheduler").get<std::string>();
        h.seed = j.at("seed").get<std::uint64_t>();
        h.step_cap = j.at("step_cap").get<int>();
        h.vis = Visibility::parse(j.at("theta").get<std::string>());
        return h;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("trace header: ") + e.what());
    }
}

std::string format_trace_record(const TraceRecord& record) {
    json j;
    j["activated"] = record.activated;
    j["after"] = config_points_json(record.config_after);
    json moves = json::array();
    for (const TraceRecord::Move& m : record.moves) {
        json jm;
        jm["from"] = m.from.str();
        jm["offset"] = m.offset.str();
        jm["robot"] = m.robot;
        jm["rule"] = rule_name(m.rule);
        jm["to"] = m.to.str();
        jm["violation"] = m.contract_violation;
        moves.push_back(jm);
    }
    j["moves"] = moves;
    json robots = json::array();
    for (const Angle& p : record.robots_after) robots.push_back(p.str());
    j["robots"] = robots;
    j["step"] = record.step;
    return j.dump();
}

TraceRecord parse_trace_record(const std::string& line) {
    const json j = parse_line(line, "trace record");
    try {
        TraceRecord r;
        r.step = j.at("step").get<int>();
        r.activated = j.at("activated").get<std::vector<std::size_t>>();
        for (const json& jm : j.at("moves")) {
            TraceRecord::Move m;
            m.robot = jm.at("robot").get<std::size_t>();
            m.from = Angle::parse(jm.at("from").get<std::string>());
            m.offset = Angle::parse(jm.at("offset").get<std::string>());
            m.to = Angle::parse(jm.at("to").get<std::string>());
            m.rule = rule_from_name(jm.at("rule").get<std::string>());
            m.contract_violation = jm.at("violation").get<bool>();
            r.moves.push_back(m);
        }
        for (const json& jp : j.at("robots"))
            r.robots_after.push_back(Angle::parse(jp.get<std::string>()));
        r.config_after = config_from_points_json(j.at("after"));
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("trace record: ") + e.what());
    }
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["algorithm"] = cert.algorithm;
    json checks = json::array();
    for (const CheckResult& c : cert.checks) {
        json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["eps"] = rational_str(cert.eps);
    j["gamma"] = rational_list_json(cert.gamma);
    j["n"] = cert.n;
    j["perturbed"] = angle_list_json(cert.perturbed);
    j["sample"] = cert.sample;
    j["theta"] = cert.theta.str();
    j["variant"] = cert.variant_name();
    if (cert.variant == Certificate::Variant::frozen) {
        j["combined"] = nullptr;
        j["gamma2"] = nullptr;
        j["mover"] = nullptr;
        j["mover2"] = nullptr;
        j["mover_index"] = nullptr;
        j["rotation_witness"] = nullptr;
        j["successor"] = nullptr;
        j["target"] = nullptr;
    } else {
        j["combined"] = angle_list_json(cert.combined);
        j["gamma2"] = cert.variant == Certificate::Variant::lemma2
                          ? rational_list_json(cert.gamma2)
                          : json(nullptr);
        j["mover"] = cert.mover.str();
        j["mover2"] = cert.variant == Certificate::Variant::lemma2 ? json(cert.mover2.str())
                                                                   : json(nullptr);
        j["mover_index"] = cert.mover_index;
        j["rotation_witness"] = cert.rotation_witness.str();
        j["successor"] = config_points_json(cert.successor);
        j["target"] = cert.target.str();
    }
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::invalid_argument("certificate json: malformed json");
    try {
        Certificate c;
        c.variant = Certificate::variant_from_name(j.at("variant").get<std::string>());
        c.algorithm = j.at("algorithm").get<std::string>();
        c.theta = Angle::parse(j.at("theta").get<std::string>());
        c.n = j.at("n").get<int>();
        c.eps = parse_rational(j.at("eps").get<std::string>());
        c.sample = j.at("sample").get<int>();
        c.gamma = rational_list_from_json(j.at("gamma"));
        c.perturbed = set_from_angle_list(j.at("perturbed"));
        for (const json& jc : j.at("checks"))
            c.checks.push_back({jc.at("name").get<std::string>(), jc.at("passed").get<bool>()});
        if (c.variant != Certificate::Variant::frozen) {
            c.combined = set_from_angle_list(j.at("combined"));
            c.mover = Angle::parse(j.at("mover").get<std::string>());
            c.mover_index = j.at("mover_index").get<int>();
            c.rotation_witness = Angle::parse(j.at("rotation_witness").get<std::string>());
            c.successor = config_from_points_json(j.at("successor"));
            c.target = Angle::parse(j.at("target").get<std::string>());
            if (c.variant == Certificate::Variant::lemma2) {
                c.gamma2 = rational_list_from_json(j.at("gamma2"));
                c.mover2 = Angle::parse(j.at("mover2").get<std::string>());
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("certificate json: ") + e.what());
    }
}

}  // namespace gathering
