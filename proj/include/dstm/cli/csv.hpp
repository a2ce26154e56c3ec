// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dstm/simkit.hpp"

namespace dstm::cli {

/// Plain comma-separated table. Cells never contain commas or quotes.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name, or -1.
    int column(const std::string& name) const;
};

std::string render_csv(const CsvTable& table);

/// Parses render_csv output; throws ConfigError on ragged rows.
CsvTable parse_csv(const std::string& text);

/// ser-sweep columns, in order. The last two extend the base layout so that
/// rows with different antenna counts or policies stay self-describing.
const std::vector<std::string>& ser_columns();

CsvTable ser_table(const std::string& preset, const std::vector<SweepRecord>& records);

struct RunManifest {
    std::string command;
    std::string preset;
    std::uint64_t base_seed = 0;
    std::string tool_version;
    std::string rng_algorithm;
    std::string timestamp;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> extra;
};

/// key = value lines, config keys first so the file loads back as a config.
std::string render_manifest(const RunManifest& manifest);

std::string utc_timestamp();

}  // namespace dstm::cli
