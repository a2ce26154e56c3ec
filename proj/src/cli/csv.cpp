// SPDX-License-Identifier: Apache-2.0
#include "dstm/cli/csv.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "dstm/cli/config.hpp"

namespace dstm::cli {

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

void write_row(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string optional_cell(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

}  // namespace

std::string render_csv(const CsvTable& table) {
    std::ostringstream os;
    write_row(os, table.header);
    for (const auto& row : table.rows) write_row(os, row);
    return os.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_row(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size()) {
                throw ConfigError("csv", "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                             " cells, header has " + std::to_string(t.header.size()));
            }
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

const std::vector<std::string>& ser_columns() {
    static const std::vector<std::string> cols{
        "preset", "scheme",    "v_mps", "theta_rad", "M",       "snr_db",    "D_m",       "case",
        "l",      "rho_l",     "rho_l1", "decisions", "errors", "ser",       "ci_low",    "ci_high",
        "pep_bound", "pep_floor", "n_rx", "policy"};
    return cols;
}

CsvTable ser_table(const std::string& preset, const std::vector<SweepRecord>& records) {
    CsvTable t;
    t.header = ser_columns();
    for (const auto& r : records) {
        t.rows.push_back({preset.empty() ? "custom" : preset,
                          std::string(to_string(r.scheme)),
                          format_double(r.v),
                          format_double(r.theta),
                          std::to_string(r.block_len),
                          format_double(r.snr_db),
                          format_double(r.spacing),
                          std::string(to_string(r.spec.case_tag)),
                          std::to_string(r.spec.lag),
                          format_double(r.spec.rho_l),
                          format_double(r.spec.rho_l1),
                          std::to_string(r.decisions),
                          std::to_string(r.errors),
                          format_double(r.ser),
                          format_double(r.ci_low),
                          format_double(r.ci_high),
                          optional_cell(r.pep_bound),
                          optional_cell(r.pep_floor),
                          std::to_string(r.n_rx),
                          r.policy});
    }
    return t;
}

std::string render_manifest(const RunManifest& m) {
    std::ostringstream os;
    os << "# run manifest; the key = value block below loads back as a config\n";
    for (const auto& [k, v] : m.config) os << k << " = " << v << '\n';
    os << "# command = " << m.command << '\n';
    os << "# preset = " << (m.preset.empty() ? "none" : m.preset) << '\n';
    os << "# base_seed = " << m.base_seed << '\n';
    os << "# tool_version = " << m.tool_version << '\n';
    os << "# rng = " << m.rng_algorithm << '\n';
    os << "# timestamp = " << m.timestamp << '\n';
    for (const auto& [k, v] : m.extra) os << "# " << k << " = " << v << '\n';
    return os.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace dstm::cli
