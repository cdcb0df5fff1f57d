// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>

#include "output.hpp"

namespace cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("invalid value '" + text + "' for " + key);
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean '" + text + "' for " + key);
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::LinearSweep: return "linear-sweep";
        case Command::TransferSweep: return "transfer-sweep";
        case Command::Siegert: return "siegert";
        case Command::OscillatorSweep: return "oscillator-sweep";
        case Command::DensityProfile: return "density-profile";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::LinearSweep, Command::TransferSweep, Command::Siegert, Command::OscillatorSweep,
                      Command::DensityProfile}) {
        if (name == command_name(c)) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + name + "'");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    static const std::map<std::string, std::function<void(RunConfig&, const std::string&, const std::string&)>>
        setters{
            {"n", [](RunConfig& c, auto& k, auto& v) { c.n = parse_number<int>(k, v); }},
            {"lambda", [](RunConfig& c, auto& k, auto& v) { c.lambda = parse_number<double>(k, v); }},
            {"d", [](RunConfig& c, auto& k, auto& v) { c.d = parse_number<double>(k, v); }},
            {"g", [](RunConfig& c, auto& k, auto& v) { c.g = parse_number<double>(k, v); }},
            {"A", [](RunConfig& c, auto& k, auto& v) { c.A = parse_number<double>(k, v); }},
            {"mu-min", [](RunConfig& c, auto& k, auto& v) { c.mu_min = parse_number<double>(k, v); }},
            {"mu-max", [](RunConfig& c, auto& k, auto& v) { c.mu_max = parse_number<double>(k, v); }},
            {"mu-steps", [](RunConfig& c, auto& k, auto& v) { c.mu_steps = parse_number<int>(k, v); }},
            {"grid-points", [](RunConfig& c, auto& k, auto& v) { c.grid_points = parse_number<int>(k, v); }},
            {"csq-max-factor", [](RunConfig& c, auto& k, auto& v) { c.csq_max_factor = parse_number<double>(k, v); }},
            {"theta-c", [](RunConfig& c, auto& k, auto& v) { c.theta_c = parse_number<double>(k, v); }},
            {"exact-kc", [](RunConfig& c, auto& k, auto& v) { c.exact_kc = parse_bool(k, v); }},
            {"seed", [](RunConfig& c, auto& k, auto& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
            {"mu", [](RunConfig& c, auto& k, auto& v) { c.mu = parse_number<double>(k, v); }},
            {"samples", [](RunConfig& c, auto& k, auto& v) { c.samples = parse_number<int>(k, v); }},
            {"format", [](RunConfig& c, auto&, auto& v) { c.format = parse_format(v); }},
            {"out", [](RunConfig& c, auto&, auto& v) { c.output_path = v; }},
            {"command", [](RunConfig& c, auto&, auto& v) { c.command = parse_command(v); }},
        };
    const auto it = setters.find(key);
    if (it == setters.end()) {
        throw ConfigError("unknown key '" + key + "'");
    }
    it->second(cfg, key, value);
}

void apply_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& skip) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        const std::string where = path + ":" + std::to_string(number) + ": ";
        if (eq == std::string::npos) {
            throw ConfigError(where + "expected key=value");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (skip.count(key)) {
            continue;
        }
        try {
            set_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void validate(const RunConfig& cfg) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (cfg.n < 1) throw ConfigError("--n must be at least 1");
    if (!finite(cfg.lambda)) throw ConfigError("--lambda must be finite");
    if (!finite(cfg.d) || !(cfg.d > 0.0)) throw ConfigError("--d must be positive and finite");
    if (!finite(cfg.g)) throw ConfigError("--g must be finite");
    if (!finite(cfg.A) || !(cfg.A > 0.0)) throw ConfigError("--A must be positive");
    const bool swept = cfg.command != Command::Siegert && cfg.command != Command::DensityProfile;
    if (swept) {
        if (cfg.mu_steps < 2) throw ConfigError("--mu-steps must be at least 2");
        if (!(cfg.mu_min > 0.0) || !finite(cfg.mu_max)) throw ConfigError("--mu-min must be positive");
        if (!(cfg.mu_min < cfg.mu_max)) throw ConfigError("empty mu range: --mu-min must be below --mu-max");
    }
    if (cfg.command == Command::DensityProfile) {
        if (!(cfg.mu > 0.0)) throw ConfigError("--mu must be positive");
        if (cfg.samples < 2) throw ConfigError("--samples must be at least 2");
    }
    if (cfg.command == Command::TransferSweep || cfg.command == Command::DensityProfile) {
        if (cfg.grid_points < 2) throw ConfigError("--grid-points must be at least 2");
        if (!(cfg.csq_max_factor > 0.0)) throw ConfigError("--csq-max-factor must be positive");
    }
    if (cfg.command == Command::Siegert || cfg.command == Command::OscillatorSweep) {
        if (cfg.n < 2) throw ConfigError("--n must be at least 2 for resonance states");
        if (!finite(cfg.theta_c)) throw ConfigError("--theta-c must be finite");
    }
}

std::map<std::string, std::string> describe(const RunConfig& cfg) {
    std::map<std::string, std::string> m{
        {"command", command_name(cfg.command)},
        {"n", std::to_string(cfg.n)},
        {"lambda", format_number(cfg.lambda)},
        {"d", format_number(cfg.d)},
        {"g", format_number(cfg.g)},
        {"A", format_number(cfg.A)},
        {"units", "hbar=m=1"},
    };
    switch (cfg.command) {
        case Command::LinearSweep:
        case Command::TransferSweep:
        case Command::OscillatorSweep:
            m["mu_min"] = format_number(cfg.mu_min);
            m["mu_max"] = format_number(cfg.mu_max);
            m["mu_steps"] = std::to_string(cfg.mu_steps);
            break;
        case Command::DensityProfile:
            m["mu"] = format_number(cfg.mu);
            m["samples"] = std::to_string(cfg.samples);
            break;
        case Command::Siegert:
            break;
    }
    if (cfg.command == Command::TransferSweep || cfg.command == Command::DensityProfile) {
        m["grid_points"] = std::to_string(cfg.grid_points);
        m["csq_max_factor"] = format_number(cfg.csq_max_factor);
        m["exact_kc"] = cfg.exact_kc ? "1" : "0";
    }
    if (cfg.command == Command::Siegert || cfg.command == Command::OscillatorSweep) {
        m["theta_c"] = format_number(cfg.theta_c);
    }
    if (cfg.command == Command::OscillatorSweep) {
        m["seed"] = std::to_string(cfg.seed);
    }
    return m;
}

}  // namespace cli
