// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dstm/cli/csv.hpp"

namespace dstm::cli {

struct PlotScript {
    std::string text;
    int series = 0;
    std::string warning;  // non-empty for an empty table
};

/// gnuplot script with SER (log scale) against the sweep axis, one series per
/// combination of the other varying parameters, data inlined as datablocks.
/// Tables with non-empty pep_bound / pep_floor cells get those as extra
/// series per group. Throws ConfigError when the ser column is missing.
PlotScript make_plot_script(const CsvTable& table, const std::string& title);

/// Reads `csv_path`, writes `csv_path + ".gp"`, returns the script summary.
PlotScript emit_plot_script(const std::string& csv_path);

}  // namespace dstm::cli
