// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "output.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace cli {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

std::string cell(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    return format_number(std::get<double>(v));
}

}  // namespace

void write_table(std::ostream& os, const Table& table, const std::map<std::string, std::string>& metadata,
                 Format format) {
    if (format == Format::Csv) {
        os << "#";
        for (const auto& [k, v] : metadata) {
            os << ' ' << k << '=' << v;
        }
        os << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c ? "," : "") << table.columns[c];
        }
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << cell(row[c]);
            }
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) {
        doc["metadata"][k] = v;
    }
    doc["columns"] = table.columns;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* i = std::get_if<std::int64_t>(&row[c])) {
                rec[table.columns[c]] = *i;
            } else {
                const double d = std::get<double>(row[c]);
                if (std::isfinite(d)) {
                    rec[table.columns[c]] = d;
                } else {
                    rec[table.columns[c]] = nullptr;
                }
            }
        }
        doc["records"].push_back(std::move(rec));
    }
    os << doc.dump(2) << '\n';
}

}  // namespace cli
