// SPDX-License-Identifier: Apache-2.0
#include "dstm/cli/plot_script.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dstm/cli/config.hpp"

namespace dstm::cli {

namespace {

const std::vector<std::string> kGroupCandidates{"scheme", "theta_rad", "M", "snr_db", "v_mps",
                                                "D_m",    "n_rx",      "policy"};

std::set<std::string> distinct(const CsvTable& t, int col) {
    std::set<std::string> values;
    for (const auto& row : t.rows) values.insert(row[col]);
    return values;
}

}  // namespace

PlotScript make_plot_script(const CsvTable& table, const std::string& title) {
    const std::string empty_header = "set logscale y\nset format y \"10^{%L}\"\nset ylabel \"SER\"\n";
    PlotScript out;
    if (table.header.empty()) {
        out.text = "# empty table, nothing to plot\n" + empty_header;
        out.warning = "empty CSV: plot script has no series";
        return out;
    }
    const int ser = table.column("ser");
    if (ser < 0) throw ConfigError("csv", "no 'ser' column; not a ser-sweep table");
    if (table.rows.empty()) {
        out.text = "# empty table, nothing to plot\n" + empty_header;
        out.warning = "empty CSV: plot script has no series";
        return out;
    }

    // x axis: whichever of v_mps / snr_db takes more distinct values
    const int v_col = table.column("v_mps");
    const int snr_col = table.column("snr_db");
    if (v_col < 0 || snr_col < 0) throw ConfigError("csv", "missing v_mps or snr_db column");
    const int x_col = distinct(table, snr_col).size() > distinct(table, v_col).size() ? snr_col : v_col;

    std::vector<int> group_cols;
    for (const auto& name : kGroupCandidates) {
        const int c = table.column(name);
        if (c >= 0 && c != x_col && distinct(table, c).size() > 1) group_cols.push_back(c);
    }

    // groups in first-appearance order
    std::vector<std::string> keys;
    std::map<std::string, std::vector<const std::vector<std::string>*>> members;
    for (const auto& row : table.rows) {
        std::string key;
        for (int c : group_cols) {
            if (!key.empty()) key += " ";
            key += table.header[c] + "=" + row[c];
        }
        if (!members.count(key)) keys.push_back(key);
        members[key].push_back(&row);
    }

    const int bound_col = table.column("pep_bound");
    const int floor_col = table.column("pep_floor");
    std::ostringstream os;
    std::vector<std::string> plot_items;
    int block = 0;
    // bound and floor curves are drawn only for groups where every row has them
    auto datablock = [&](const std::string& key, int y_col, const std::string& label, bool require_all) {
        if (y_col < 0) return;
        if (require_all) {
            for (const auto* row : members[key]) {
                if ((*row)[y_col].empty()) return;
            }
        }
        std::ostringstream data;
        int points = 0;
        for (const auto* row : members[key]) {
            if ((*row)[y_col].empty()) continue;
            data << (*row)[x_col] << ' ' << (*row)[y_col] << '\n';
            ++points;
        }
        if (points == 0) return;
        const std::string name = "$s" + std::to_string(block++);
        os << name << " << EOD\n" << data.str() << "EOD\n";
        plot_items.push_back(name + " using 1:2 with linespoints title \"" + label + "\"");
        ++out.series;
    };
    for (const auto& key : keys) {
        const std::string label = key.empty() ? "SER" : key;
        datablock(key, ser, label, false);
        datablock(key, bound_col, "bound " + label, true);
        datablock(key, floor_col, "floor " + label, true);
    }

    std::ostringstream head;
    head << "# gnuplot script\n"
         << "set title \"" << title << "\"\n"
         << "set xlabel \"" << table.header[x_col] << "\"\n"
         << empty_header << "set key outside right\nset grid\n";
    out.text = head.str() + os.str();
    if (!plot_items.empty()) {
        out.text += "plot ";
        for (std::size_t i = 0; i < plot_items.size(); ++i) {
            if (i) out.text += ", \\\n     ";
            out.text += plot_items[i];
        }
        out.text += "\n";
    }
    return out;
}

PlotScript emit_plot_script(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("csv", "cannot open '" + csv_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const CsvTable table = parse_csv(ss.str());
    std::string title = csv_path;
    const int preset = table.column("preset");
    if (preset >= 0 && !table.rows.empty()) title = table.rows.front()[preset];
    PlotScript script = make_plot_script(table, title);
    std::ofstream out(csv_path + ".gp");
    if (!out) throw ConfigError("out", "cannot write '" + csv_path + ".gp'");
    out << script.text;
    return script;
}

}  // namespace dstm::cli
