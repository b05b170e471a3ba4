#include "gathering/algorithm.hpp"
#include "gathering/configuration.hpp"
#include "gathering/engine.hpp"
#include "gathering/geometry.hpp"
#include "gathering/impossibility.hpp"
#include "gathering/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace gathering;

constexpr int kExitError = 1;
constexpr int kExitStepCap = 2;
constexpr int kExitViolation = 3;
constexpr int kExitExhausted = 4;

Configuration config_from_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_config(arg);
    // Inline form: comma-separated angles, each with an optional xK suffix.
    std::string as_lines = arg;
    std::replace(as_lines.begin(), as_lines.end(), ',', '\n');
    return parse_config(as_lines);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

int run_simulate(const std::string& config_arg, int n, std::uint64_t seed, long bound,
                 const std::string& theta_arg, const std::string& alg_arg,
                 const std::string& sched_arg, int step_cap, bool monitor,
                 const std::string& trace_path, bool quiet) {
    Configuration S0;
    if (!config_arg.empty()) {
        S0 = config_from_arg(config_arg);
        if (S0.empty()) throw std::runtime_error("configuration is empty");
        if (n != 0 && n != S0.n())
            throw std::runtime_error("--n disagrees with the configuration size");
    } else {
        if (n < 1) throw std::runtime_error("provide --config or --n");
        if (bound == 0) bound = 360L * n;
        S0 = random_asymmetric_config(n, seed, bound);
    }

    const Visibility vis = Visibility::parse(theta_arg);
    const AlgorithmRegistry registry = AlgorithmRegistry::with_builtins();
    const AlgorithmFn& alg = registry.find(alg_arg);
    const SchedulerSpec sched = SchedulerSpec::parse(sched_arg);

    RunOptions options;
    options.step_cap = step_cap;
    options.monitor = monitor;

    std::ofstream trace;
    if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) throw std::runtime_error("cannot write trace file: " + trace_path);
        TraceHeader header;
        header.n = S0.n();
        header.vis = vis;
        header.algorithm = alg_arg;
        header.scheduler = sched.str();
        header.seed = seed;
        header.step_cap = step_cap;
        trace << format_trace_header(header) << '\n';
        options.on_record = [&trace](const TraceRecord& record) {
            trace << format_trace_record(record) << '\n';
        };
    }

    const RunResult result = run(S0, sched, alg, vis, seed, options);

    if (!quiet) {
        std::cout << "start: " << [&] {
            std::string s;
            for (const auto& [p, c] : S0.points()) {
                if (!s.empty()) s += ' ';
                s += p.str();
                if (c > 1) s += "x" + std::to_string(c);
            }
            return s;
        }() << '\n';
        switch (result.outcome) {
            case RunResult::Outcome::gathered:
                std::cout << "gathered at " << result.gather_point->str() << " after "
                          << result.steps << " steps\n";
                break;
            case RunResult::Outcome::step_cap_exceeded:
                std::cout << "step cap of " << step_cap << " exceeded\n";
                break;
            case RunResult::Outcome::contract_violation:
                std::cout << "contract violation at step " << result.violation_step << ": "
                          << result.violation << '\n';
                break;
        }
        if (!result.rule_counts.empty()) {
            std::cout << "rules fired:";
            for (const auto& [rule, count] : result.rule_counts)
                std::cout << ' ' << rule_name(rule) << "=" << count;
            std::cout << '\n';
        }
        for (const std::string& v : result.monitor_violations)
            std::cout << "monitor: " << v << '\n';
    }

    if (result.outcome == RunResult::Outcome::contract_violation) return kExitViolation;
    if (!result.monitor_violations.empty()) return kExitViolation;
    if (result.outcome == RunResult::Outcome::step_cap_exceeded) return kExitStepCap;
    return 0;
}

int run_forge(const std::string& alg_arg, const std::string& theta_arg, int n, bool auto_n,
              std::uint64_t seed, int max_samples, long coeff_denominator,
              const std::string& out_path) {
    const Angle theta = Angle::parse(theta_arg);
    if (auto_n) n = find_compatible(theta, 2);
    if (n < 1) throw std::runtime_error("provide --n or --auto-n");

    const AlgorithmRegistry registry = AlgorithmRegistry::with_builtins();
    const AlgorithmFn& alg = registry.find(alg_arg);

    ForgeOptions options;
    options.max_samples = max_samples;
    options.coeff_denominator = coeff_denominator;

    Certificate cert;
    try {
        cert = forge(alg, alg_arg, theta, n, seed, options);
    } catch (const ForgeExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitExhausted;
    }

    int passed = 0;
    for (const CheckResult& c : cert.checks)
        if (c.passed) ++passed;
    std::cout << "variant=" << cert.variant_name() << " n=" << cert.n << " sample=" << cert.sample
              << " checks=" << passed << "/" << cert.checks.size() << '\n';
    const std::string json_text = certificate_to_json(cert);
    if (!out_path.empty()) {
        write_text(out_path, json_text);
        std::cout << "certificate written to " << out_path << '\n';
    } else {
        std::cout << json_text;
    }
    return cert.all_passed() ? 0 : kExitError;
}

int run_compat(const std::string& theta_arg, int n_min) {
    const Angle theta = Angle::parse(theta_arg);
    std::cout << find_compatible(theta, n_min) << '\n';
    return 0;
}

int run_gen_config(int n, std::uint64_t seed, long bound, const std::string& out_path) {
    if (n < 1) throw std::runtime_error("--n must be positive");
    if (bound == 0) bound = 360L * n;
    const Configuration S = random_asymmetric_config(n, seed, bound);
    const std::string text = format_config(S);
    if (!out_path.empty())
        write_text(out_path, text);
    else
        std::cout << text;
    return 0;
}

ObstacleSets parse_obstacles(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open obstacle file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw std::runtime_error("obstacle file: expected a json array of point sets");
    ObstacleSets X;
    for (const nlohmann::json& set : j) {
        std::vector<GridPoint> points;
        for (const nlohmann::json& jp : set) {
            GridPoint p;
            for (const nlohmann::json& coord : jp)
                p.push_back(parse_rational(coord.get<std::string>()));
            points.push_back(std::move(p));
        }
        X.push_back(std::move(points));
    }
    if (static_cast<int>(X.size()) != n)
        throw std::runtime_error("obstacle file: expected one set per dimension");
    return X;
}

int run_derandomize(int m, int n, const std::string& obstacles_path,
                    const std::string& out_path) {
    ObstacleSets X(static_cast<std::size_t>(n));
    if (!obstacles_path.empty()) X = parse_obstacles(obstacles_path, n);
    const GridPoint point = derandomize(m, n, X);

    std::string line;
    for (const Rational& x : point) {
        if (!line.empty()) line += ' ';
        line += rational_str(x);
    }
    std::cout << line << '\n';

    if (!out_path.empty()) {
        nlohmann::json j;
        j["m"] = m;
        j["n"] = n;
        nlohmann::json coords = nlohmann::json::array();
        for (const Rational& x : point) coords.push_back(rational_str(x));
        j["point"] = coords;
        write_text(out_path, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and impossibility verifier for robot gathering on a circle"};
    app.require_subcommand(1);

    std::string config_arg, theta_arg = "1/2", alg_arg = "listing1", sched_arg = "full";
    std::string trace_path, out_path, obstacles_path;
    int n = 0, step_cap = 10000, max_samples = 100, n_min = 2, m = 2;
    std::uint64_t seed = 0;
    long bound = 0, coeff_denominator = 10000;
    bool monitor = false, quiet = false, auto_n = false;

    CLI::App* sim = app.add_subcommand("simulate", "Run one scheduled execution to completion");
    sim->add_option("--config", config_arg,
                    "Start configuration: a file path, or inline comma-separated angles");
    sim->add_option("--n", n, "Robot count for a generated start (requires no --config)");
    sim->add_option("--seed", seed, "Seed for generation and scheduling");
    sim->add_option("--bound", bound, "Denominator bound for generated starts (default 360n)");
    sim->add_option("--theta", theta_arg, "Visibility range in turns; 1/1 means full visibility");
    sim->add_option("--alg", alg_arg, "Algorithm name (listing1, fullvis, stay, midpoint)");
    sim->add_option("--sched", sched_arg, "full | rr | random:p[:F] | script:0,1;2;...");
    sim->add_option("--step-cap", step_cap, "Give up after this many steps");
    sim->add_flag("--monitor", monitor, "Check movement invariants every step");
    sim->add_option("--trace", trace_path, "Write a JSON Lines trace to this file");
    sim->add_flag("--quiet", quiet, "Suppress the summary");

    CLI::App* forge_cmd = app.add_subcommand("forge", "Search for an impossibility certificate");
    forge_cmd->add_option("--alg", alg_arg, "Algorithm name")->required();
    forge_cmd->add_option("--theta", theta_arg, "Visibility range in turns, at most 1/4")
        ->required();
    forge_cmd->add_option("--n", n, "Number of robots (a compatible size)");
    forge_cmd->add_flag("--auto-n", auto_n, "Use the smallest compatible size");
    forge_cmd->add_option("--seed", seed, "Sampling seed");
    forge_cmd->add_option("--max-samples", max_samples, "Sample budget");
    forge_cmd->add_option("--coeff-bound", coeff_denominator,
                          "Denominator for perturbation coefficients");
    forge_cmd->add_option("--out", out_path, "Write the certificate json to this file");

    CLI::App* compat = app.add_subcommand("compat", "Find the smallest compatible robot count");
    compat->add_option("--theta", theta_arg, "Visibility range in turns, at most 1/4")
        ->required();
    compat->add_option("--min", n_min, "Lower bound for the search");

    CLI::App* gen = app.add_subcommand("gen-config", "Generate a random asymmetric configuration");
    gen->add_option("--n", n, "Robot count")->required();
    gen->add_option("--seed", seed, "Sampling seed");
    gen->add_option("--bound", bound, "Denominator bound (default 360n)");
    gen->add_option("--out", out_path, "Write the configuration to this file");

    CLI::App* derand = app.add_subcommand("derandomize",
                                          "Construct a grid point avoiding obstacle sets");
    derand->add_option("--m", m, "Line bound: every axis line holds fewer than m obstacles")
        ->required();
    derand->add_option("--n", n, "Dimension")->required();
    derand->add_option("--obstacles", obstacles_path,
                       "JSON file: n sets of points, coordinates as rational strings");
    derand->add_option("--out", out_path, "Write the chosen point as json to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return run_simulate(config_arg, n, seed, bound, theta_arg, alg_arg, sched_arg,
                                step_cap, monitor, trace_path, quiet);
        if (forge_cmd->parsed())
            return run_forge(alg_arg, theta_arg, n, auto_n, seed, max_samples, coeff_denominator,
                             out_path);
        if (compat->parsed()) return run_compat(theta_arg, n_min);
        if (gen->parsed()) return run_gen_config(n, seed, bound, out_path);
        if (derand->parsed()) return run_derandomize(m, n, obstacles_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
