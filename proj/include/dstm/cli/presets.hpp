// SPDX-License-Identifier: Apache-2.0
//
// Named sweeps: fig5 (speed x direction, both decoders), fig7 (proposed vs.
// conventional with fewer antennas), fig8 (SNR with bound and floor), fig9
// (block length family) and fig10 (adaptation policies).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dstm/cli/config.hpp"

namespace dstm::cli {

struct Preset {
    std::string name;
    std::vector<TrialPlan> plans;
    /// Extra manifest entries, e.g. the velocity threshold per spacing.
    std::map<std::string, std::string> metadata;
};

const std::vector<std::string>& preset_names();

/// Throws ConfigError("preset", ...) for unknown names. Physical parameters
/// not fixed by the preset, the seed and the decision count come from `rc`.
Preset make_preset(const std::string& name, const RunConfig& rc, const Codebook& cb);

/// The plan list a run without a preset sweeps: config axes, Cartesian.
std::vector<TrialPlan> config_plans(const RunConfig& rc, const Codebook& cb);

}  // namespace dstm::cli
