#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rebsim/sweep/sweep.hpp"

namespace rebsim {

namespace detail {

// Shortest round-trip decimal representation, locale-independent.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& s) {
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc())
        throw ConfigError("csv: cannot parse number '" + s + "'");
    return v;
}

} // namespace detail

// Fixed column order: swept axes (config order), success_probability,
// infidelity, fidelity, herald_pattern, error (empty if ok). Full-precision
// doubles, '.' decimal, '\n' line endings, UTF-8, header row.
inline std::string sweep_csv_header(const SweepGrid& grid) {
    std::string line;
    for (const auto& a : grid.axes) line += a.name + ",";
    line += "success_probability,infidelity,fidelity,herald_pattern,error\n";
    return line;
}

inline std::string sweep_row_csv(const SweepGrid& grid, const ProtocolOutcome& row) {
    std::string line;
    for (const auto& a : grid.axes) {
        const auto it = row.swept_values.find(a.name);
        line += detail::format_double(it == row.swept_values.end() ? 0.0 : it->second);
        line += ",";
    }
    line += detail::format_double(row.success_probability) + ",";
    line += detail::format_double(row.infidelity) + ",";
    line += detail::format_double(row.fidelity) + ",";
    line += detail::csv_quote(row.herald_pattern) + ",";
    line += detail::csv_quote(row.error) + "\n";
    return line;
}

inline std::string sweep_to_csv(const SweepResult& result) {
    std::string out = sweep_csv_header(result.grid);
    for (const auto& row : result.rows) out += sweep_row_csv(result.grid, row);
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw ConfigError("failed writing '" + path + "'");
}

// Reads a persisted sweep CSV back into a SweepResult shell. Axis columns are
// everything before the success_probability column.
inline SweepResult read_sweep_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for reading");
    std::string header;
    if (!std::getline(f, header)) throw ConfigError("csv '" + path + "' is empty");
    const auto cols = detail::csv_split(header);
    std::size_t n_axes = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == "success_probability") { n_axes = i; break; }
    if (n_axes + 5 != cols.size())
        throw ConfigError("csv '" + path + "' does not match the sweep schema");

    SweepResult result;
    for (std::size_t i = 0; i < n_axes; ++i)
        result.grid.axes.push_back(SweepAxis{cols[i], 0, 0, 1, SweepAxis::Scale::Linear});
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::csv_split(line);
        if (fields.size() != cols.size())
            throw ConfigError("csv '" + path + "' has a malformed row");
        ProtocolOutcome row;
        for (std::size_t i = 0; i < n_axes; ++i)
            row.swept_values[cols[i]] = detail::parse_double(fields[i]);
        row.success_probability = detail::parse_double(fields[n_axes]);
        row.infidelity = detail::parse_double(fields[n_axes + 1]);
        row.fidelity = detail::parse_double(fields[n_axes + 2]);
        row.herald_pattern = fields[n_axes + 3];
        row.error = fields[n_axes + 4];
        result.rows.push_back(std::move(row));
    }
    result.meta.rows = result.rows.size();
    return result;
}

} // namespace rebsim
