// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace cli {

enum class Command { LinearSweep, TransferSweep, Siegert, OscillatorSweep, DensityProfile };
enum class Format { Csv, Json };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::LinearSweep;
    int n = 2;
    double lambda = 10.0;
    double d = 2.0;
    double g = 0.0;
    double A = 0.1;
    double mu_min = 1.0;
    double mu_max = 1.4;
    int mu_steps = 201;
    int grid_points = 4000;
    double csq_max_factor = 1.05;
    double theta_c = 0.6;
    bool exact_kc = false;
    std::uint64_t seed = 20260101;
    double mu = 1.15;  // density-profile only
    int samples = 401; // density-profile only
    std::string output_path;  // empty or "-" for stdout
    Format format = Format::Csv;
};

const char* command_name(Command c);
Command parse_command(const std::string& name);
Format parse_format(const std::string& name);

/// Sets one field from its key (flag name without dashes). Throws ConfigError.
void set_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads key=value lines ('#' starts a comment). Keys in `skip` are ignored
/// because a flag already set them. Errors carry file and line.
void apply_config_file(RunConfig& cfg, const std::string& path, const std::set<std::string>& skip);

/// Throws ConfigError on inconsistent parameters.
void validate(const RunConfig& cfg);

/// Ordered parameter record for output metadata.
std::map<std::string, std::string> describe(const RunConfig& cfg);

}  // namespace cli
