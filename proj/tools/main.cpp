// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlse/nlse.h"
#include "output.hpp"
#include "run_config.hpp"

namespace {

using cli::Command;
using cli::RunConfig;
using cli::Table;
using cli::Value;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct SolverFailure {
    nlse_status status;
    std::string message;
};

void check(nlse_status s) {
    if (s != NLSE_OK) {
        throw SolverFailure{s, nlse_last_error()};
    }
}

nlse_potential potential(const RunConfig& cfg) { return {cfg.n, cfg.lambda, cfg.d}; }

std::vector<double> mu_grid(const RunConfig& cfg) {
    std::vector<double> v(cfg.mu_steps);
    for (int i = 0; i < cfg.mu_steps; ++i) {
        v[i] = cfg.mu_min + (cfg.mu_max - cfg.mu_min) * static_cast<double>(i) / (cfg.mu_steps - 1);
    }
    v.back() = cfg.mu_max;
    return v;
}

nlse_transfer_config transfer_config(const RunConfig& cfg) {
    nlse_transfer_config t = nlse_transfer_config_default();
    t.spec = potential(cfg);
    t.g = cfg.g;
    t.A = cfg.A;
    t.grid_points = cfg.grid_points;
    t.csq_max_factor = cfg.csq_max_factor;
    t.exact_kc = cfg.exact_kc ? 1 : 0;
    return t;
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
};

std::vector<nlse_branch_point> sweep_points(const RunConfig& cfg, const std::vector<double>& mus) {
    const nlse_transfer_config t = transfer_config(cfg);
    Handle<nlse_branch_set, nlse_branch_set_free> set;
    check(nlse_transfer_sweep(&t, mus.data(), mus.size(), &set.p));
    std::vector<nlse_branch_point> pts(nlse_branch_set_size(set.p));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        check(nlse_branch_set_get(set.p, i, &pts[i]));
    }
    return pts;
}

Table linear_sweep(const RunConfig& cfg) {
    Table t{{"mu", "Tsq"}, {}};
    const nlse_potential spec = potential(cfg);
    for (double mu : mu_grid(cfg)) {
        double tsq = 0.0;
        check(nlse_transmission_linear(&spec, mu, &tsq));
        t.rows.push_back({mu, tsq});
    }
    return t;
}

Table transfer_sweep(const RunConfig& cfg) {
    Table t{{"mu", "Csq", "Tsq", "residual", "branch_id"}, {}};
    for (const auto& p : sweep_points(cfg, mu_grid(cfg))) {
        t.rows.push_back({p.mu, p.Csq, p.Tsq, p.residual, static_cast<std::int64_t>(p.branch_id)});
    }
    return t;
}

Table siegert(const RunConfig& cfg) {
    Table t{{"n", "l", "mu_re", "gamma", "residual"}, {}};
    const nlse_potential spec = potential(cfg);
    Handle<nlse_mode_set, nlse_mode_set_free> modes;
    check(nlse_siegert_modes(&spec, cfg.theta_c, &modes.p));
    for (std::size_t i = 0; i < nlse_mode_set_size(modes.p); ++i) {
        nlse_mode_info m;
        check(nlse_mode_set_get(modes.p, i, &m));
        t.rows.push_back({static_cast<std::int64_t>(m.n), static_cast<std::int64_t>(m.l), m.mu, m.gamma, m.residual});
    }
    return t;
}

Table oscillator_sweep(const RunConfig& cfg) {
    const nlse_potential spec = potential(cfg);
    Handle<nlse_mode_set, nlse_mode_set_free> modes;
    check(nlse_siegert_modes(&spec, cfg.theta_c, &modes.p));
    nlse_oscillator_config oc = nlse_oscillator_config_default();
    oc.g = cfg.g;
    oc.A = cfg.A;
    oc.seed = cfg.seed;
    Handle<nlse_osc_sweep, nlse_osc_sweep_free> sweep;
    check(nlse_oscillator_sweep(modes.p, &oc, cfg.mu_min, cfg.mu_max, cfg.mu_steps, &sweep.p));
    const std::size_t nb = nlse_osc_sweep_modes(sweep.p);
    Table t{{"mu", "Tsq", "branch_id", "stable"}, {}};
    for (std::size_t j = 1; j <= nb; ++j) {
        t.columns.push_back("occ_" + std::to_string(j));
    }
    std::vector<double> occ(nb);
    for (std::size_t i = 0; i < nlse_osc_sweep_size(sweep.p); ++i) {
        nlse_osc_point p;
        check(nlse_osc_sweep_get(sweep.p, i, &p, occ.data()));
        std::vector<Value> row{p.mu, p.Tsq, static_cast<std::int64_t>(p.branch_id), static_cast<std::int64_t>(p.stable)};
        row.insert(row.end(), occ.begin(), occ.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table density_profile(const RunConfig& cfg) {
    Table t{{"root", "Csq", "Tsq", "alpha", "x", "S", "Phi"}, {}};
    const nlse_transfer_config tc = transfer_config(cfg);
    const auto roots = sweep_points(cfg, {cfg.mu});
    for (std::size_t r = 0; r < roots.size(); ++r) {
        double alpha = 0.0;
        check(nlse_asymmetry(&tc, cfg.mu, roots[r].Csq, &alpha));
        Handle<nlse_profile, nlse_profile_free> prof;
        check(nlse_density_profile(&tc, cfg.mu, roots[r].Csq, cfg.samples, &prof.p));
        for (std::size_t i = 0; i < nlse_profile_size(prof.p); ++i) {
            double x, S, phi;
            check(nlse_profile_get(prof.p, i, &x, &S, &phi));
            t.rows.push_back({static_cast<std::int64_t>(r), roots[r].Csq, roots[r].Tsq, alpha, x, S, phi});
        }
    }
    return t;
}

Table run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::LinearSweep: return linear_sweep(cfg);
        case Command::TransferSweep: return transfer_sweep(cfg);
        case Command::Siegert: return siegert(cfg);
        case Command::OscillatorSweep: return oscillator_sweep(cfg);
        case Command::DensityProfile: return density_profile(cfg);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonant transmission of nonlinear waves through a delta-barrier comb"};
    app.require_subcommand(1);
    app.fallthrough();

    // Raw flag text, converted by cli::set_value so that flags and config
    // files share one parser.
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> opts;
    auto add = [&](const std::string& key, const std::string& help) {
        opts[key] = app.add_option("--" + key, raw[key], help);
    };
    add("n", "number of barriers");
    add("lambda", "barrier strength");
    add("d", "barrier spacing");
    add("g", "nonlinearity");
    add("A", "incident amplitude");
    add("mu-min", "lower end of the mu sweep");
    add("mu-max", "upper end of the mu sweep");
    add("mu-steps", "number of mu values");
    add("grid-points", "|C|^2 grid size of the transfer-map root search");
    add("csq-max-factor", "upper end of the |C|^2 search in units of |A|^2");
    add("theta-c", "exterior complex scaling angle");
    add("seed", "random seed of the oscillator branch search");
    add("format", "csv or json");
    add("out", "output file, '-' for stdout");
    add("mu", "chemical potential of density-profile");
    add("samples", "number of density-profile samples");
    bool exact_kc = false;
    CLI::Option* exact_flag = app.add_flag("--exact-kc", exact_kc, "downstream wavenumber from the full dispersion");
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file; flags take precedence");

    std::string command;
    for (const Command c : {Command::LinearSweep, Command::TransferSweep, Command::Siegert, Command::OscillatorSweep,
                            Command::DensityProfile}) {
        app.add_subcommand(cli::command_name(c), "")->callback([&command, c] { command = cli::command_name(c); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    RunConfig cfg;
    try {
        cfg.command = cli::parse_command(command);
        std::set<std::string> given;
        for (const auto& [key, opt] : opts) {
            if (opt->count() > 0) given.insert(key);
        }
        if (exact_flag->count() > 0) given.insert("exact-kc");
        if (!config_path.empty()) {
            given.insert("command");
            cli::apply_config_file(cfg, config_path, given);
        }
        for (const auto& key : given) {
            if (key == "exact-kc") {
                cfg.exact_kc = exact_kc;
            } else if (key != "command") {
                try {
                    cli::set_value(cfg, key, raw[key]);
                } catch (const cli::ConfigError& e) {
                    throw cli::ConfigError("flag --" + key + ": " + e.what());
                }
            }
        }
        cli::validate(cfg);
    } catch (const cli::ConfigError& e) {
        std::cerr << "nlse-comb: config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::ostringstream text;
    try {
        cli::write_table(text, run(cfg), cli::describe(cfg), cfg.format);
    } catch (const SolverFailure& f) {
        std::cerr << "nlse-comb: " << cli::command_name(cfg.command) << ": " << nlse_status_name(f.status) << ": "
                  << f.message << '\n';
        return kExitSolver;
    }

    if (cfg.output_path.empty() || cfg.output_path == "-") {
        std::cout << text.str();
        std::cout.flush();
        return std::cout ? 0 : kExitIo;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    file << text.str();
    file.close();
    if (!file) {
        std::cerr << "nlse-comb: cannot write '" << cfg.output_path << "'\n";
        return kExitIo;
    }
    return 0;
}
