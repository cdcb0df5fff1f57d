// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "run_config.hpp"

namespace cli {

using Value = std::variant<std::int64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

/// Shortest round-trip decimal representation, '.' separator.
std::string format_number(double v);

/// CSV: '#' metadata line, header row, records. JSON: object with
/// "metadata", "columns" and "records" (one object per row).
void write_table(std::ostream& os, const Table& table, const std::map<std::string, std::string>& metadata,
                 Format format);

}  // namespace cli
