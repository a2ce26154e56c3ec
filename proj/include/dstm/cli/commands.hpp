// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dstm/cli/csv.hpp"

namespace dstm::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kModelViolation = 2 };

struct CommandOptions {
    std::string command;  // correlation | pep-bound | ser-sweep | adaptive
    std::string config_path;
    std::string preset;
    std::string out;  // empty: CSV to `out`, manifest to `err`
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    bool emit_plot = false;
};

struct CommandResult {
    CsvTable table;
    RunManifest manifest;
    /// Additional tables written next to the main CSV, by file suffix.
    std::vector<std::pair<std::string, CsvTable>> side_tables;
    std::vector<std::string> warnings;
};

/// Runs one subcommand without touching the filesystem (except config input).
CommandResult execute(const CommandOptions& opts);

/// execute + output files + exit-code mapping; diagnostics go to `err`.
int run_command(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace dstm::cli
