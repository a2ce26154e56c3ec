// SPDX-License-Identifier: Apache-2.0
//
// Block-length adaptation. Stretching a block to M codewords moves the array
// by v*M*T*t_s per block; choosing M so that this matches the antenna spacing
// turns a weak two-band correlation into a strong single band.
#pragma once

#include <limits>
#include <string>

#include "dstm/analysis.hpp"

namespace dstm {

enum class PolicyKind { Fixed, OptM, HTA };

struct AdaptationPolicy {
    PolicyKind kind = PolicyKind::Fixed;
    int m = 1;       // Fixed
    int m_max = 64;  // OptM
    double v0 = std::numeric_limits<double>::infinity();  // HTA; +inf means "never adapt"

    static AdaptationPolicy fixed(int m);
    static AdaptationPolicy optm(int m_max = 64);
    static AdaptationPolicy hta(double v0);
    void validate() const;
};

/// "Fixed(1)", "OptM(64)", "HTA".
std::string to_string(const AdaptationPolicy& policy);

/// Correlation for theta = 0 and block length m (tau = m T t_s), safeguarded.
CorrelationSpec correlation_for_block(double v, int m, const SystemConfig& cfg);

/// Worst-pair PEP bound at speed v and block length m (general bound for
/// Case I, single-band bound for Case II, 1 for Case III).
BoundValue block_bound(double v, int m, const SystemConfig& cfg, const Codebook& cb);

/// max(Round(D / (v T t_s)), 1), Round half away from zero.
int aligned_block_length(double v, const SystemConfig& cfg);

/// 1 below v0, aligned_block_length above.
int hta_block_length(double v, const AdaptationPolicy& policy, const SystemConfig& cfg);

/// M in [1, m_max] minimising block_bound; ties go to the smaller M.
int optm_search(double v, int m_max, const SystemConfig& cfg, const Codebook& cb);

/// Block length chosen by any policy.
int block_length(double v, const AdaptationPolicy& policy, const SystemConfig& cfg, const Codebook& cb);

struct ThresholdResult {
    double v0 = std::numeric_limits<double>::infinity();
    bool found = false;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    /// |PEP(v0, 1) - PEP(v0, M(v0))| at the returned point.
    double residual = 0.0;
};

/// Smallest v > 0 where PEP(v, 1) and PEP(v, aligned_block_length(v)) cross.
/// Scans a 0.5 m/s grid on (0, 200] (skipping points with aligned M = 1, where
/// the two sides coincide) and bisects the first sign change to 0.01 m/s.
ThresholdResult velocity_threshold(const SystemConfig& cfg, const Codebook& cb);

}  // namespace dstm
