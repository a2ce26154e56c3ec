// SPDX-License-Identifier: Apache-2.0
//
// Flat "key = value" run configuration with '#' comments. Unspecified keys
// keep the reference defaults of SystemConfig (SNR 5 dB, 4x4, 3 GHz, ...).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dstm/adaptive.hpp"
#include "dstm/codebook.hpp"
#include "dstm/simkit.hpp"

namespace dstm::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    SystemConfig system;
    double snr_db = 5.0;

    // codebook
    int k_card = 4;
    std::vector<int> exponents{1, 1, 3, 3};

    // sweep axes used when no preset is given
    double v_min = 0.0;
    double v_max = 200.0;
    double v_step = 5.0;
    std::vector<double> theta{0.0};
    double snr_min = 5.0;
    double snr_max = 5.0;
    double snr_step = 1.0;
    std::vector<Scheme> schemes{Scheme::Conventional, Scheme::Proposed};
    AdaptationPolicy policy;
    std::vector<double> spacings;  // empty: system.antenna_spacing only

    // Monte Carlo
    std::int64_t decisions = 100000;
    int decisions_per_chain = 16;
    std::uint64_t seed = 1;
    int workers = 0;

    std::vector<double> speeds() const;
    std::vector<double> snr_points() const;
    Codebook codebook() const;
    TrialPlan plan_template() const;
};

/// Parses configuration text. Errors name the line and the key.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Reads and parses `path`; an empty path yields the defaults.
RunConfig load_config(const std::string& path);

/// Every key with its effective value, in parse-compatible form.
std::map<std::string, std::string> config_snapshot(const RunConfig& cfg);

/// %.9g formatting used for every float the tool writes.
std::string format_double(double x);

}  // namespace dstm::cli
