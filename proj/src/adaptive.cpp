// SPDX-License-Identifier: Apache-2.0
#include "dstm/adaptive.hpp"

#include <cmath>
#include <optional>

namespace dstm {

AdaptationPolicy AdaptationPolicy::fixed(int m) {
    AdaptationPolicy p;
    p.kind = PolicyKind::Fixed;
    p.m = m;
    return p;
}

AdaptationPolicy AdaptationPolicy::optm(int m_max) {
    AdaptationPolicy p;
    p.kind = PolicyKind::OptM;
    p.m_max = m_max;
    return p;
}

AdaptationPolicy AdaptationPolicy::hta(double v0) {
    AdaptationPolicy p;
    p.kind = PolicyKind::HTA;
    p.v0 = v0;
    return p;
}

void AdaptationPolicy::validate() const {
    if (kind == PolicyKind::Fixed && m < 1) throw ConfigError("block_len", "must be >= 1");
    if (kind == PolicyKind::OptM && m_max < 1) throw ConfigError("m_max", "must be >= 1");
    if (kind == PolicyKind::HTA && !(v0 > 0.0)) throw ConfigError("v0", "must be > 0");
}

std::string to_string(const AdaptationPolicy& policy) {
    switch (policy.kind) {
        case PolicyKind::Fixed: return "Fixed(" + std::to_string(policy.m) + ")";
        case PolicyKind::OptM: return "OptM(" + std::to_string(policy.m_max) + ")";
        case PolicyKind::HTA: return "HTA";
    }
    return "?";
}

CorrelationSpec correlation_for_block(double v, int m, const SystemConfig& cfg) {
    if (m < 1) throw std::invalid_argument("correlation_for_block: m must be >= 1");
    SystemConfig c = cfg;
    c.block_len = m;
    return evaluate_correlation(MobilityState{v, 0.0}, c);
}

BoundValue block_bound(double v, int m, const SystemConfig& cfg, const Codebook& cb) {
    return worst_pair_bound(cb, correlation_for_block(v, m, cfg), cfg);
}

int aligned_block_length(double v, const SystemConfig& cfg) {
    if (v <= 0.0) throw std::invalid_argument("aligned_block_length: v must be > 0");
    const double ratio = cfg.antenna_spacing / (v * cfg.codeword_duration());
    const double m = std::round(ratio);
    if (m >= double(std::numeric_limits<int>::max())) return std::numeric_limits<int>::max();
    return std::max(static_cast<int>(m), 1);
}

int hta_block_length(double v, const AdaptationPolicy& policy, const SystemConfig& cfg) {
    if (v < 0.0) throw std::invalid_argument("hta_block_length: v must be >= 0");
    if (v < policy.v0) return 1;
    return aligned_block_length(v, cfg);
}

int optm_search(double v, int m_max, const SystemConfig& cfg, const Codebook& cb) {
    int best = 1;
    double best_log = block_bound(v, 1, cfg, cb).log10;
    for (int m = 2; m <= m_max; ++m) {
        const double b = block_bound(v, m, cfg, cb).log10;
        if (b < best_log) {
            best_log = b;
            best = m;
        }
    }
    return best;
}

int block_length(double v, const AdaptationPolicy& policy, const SystemConfig& cfg, const Codebook& cb) {
    switch (policy.kind) {
        case PolicyKind::Fixed: return policy.m;
        case PolicyKind::OptM: return optm_search(v, policy.m_max, cfg, cb);
        case PolicyKind::HTA: return hta_block_length(v, policy, cfg);
    }
    return 1;
}

namespace {

// PEP(v, 1) - PEP(v, M(v)); empty where M(v) = 1.
std::optional<double> threshold_difference(double v, const SystemConfig& cfg, const Codebook& cb) {
    const int m = aligned_block_length(v, cfg);
    if (m == 1) return std::nullopt;
    return block_bound(v, 1, cfg, cb).linear - block_bound(v, m, cfg, cb).linear;
}

bool sign_change(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

}  // namespace

ThresholdResult velocity_threshold(const SystemConfig& cfg, const Codebook& cb) {
    constexpr double kGridStep = 0.5;
    constexpr double kGridEnd = 200.0;
    constexpr double kResolution = 0.01;

    ThresholdResult result;
    std::optional<double> prev;
    double prev_v = 0.0;
    for (int i = 1; i * kGridStep <= kGridEnd; ++i) {
        const double v = i * kGridStep;
        const auto d = threshold_difference(v, cfg, cb);
        if (!d) continue;
        if (*d == 0.0) {
            result = {v, true, v, v, 0.0};
            return result;
        }
        if (prev && sign_change(*prev, *d)) {
            double lo = prev_v;
            double hi = v;
            double d_lo = *prev;
            while (hi - lo > kResolution) {
                const double mid = 0.5 * (lo + hi);
                const auto d_mid = threshold_difference(mid, cfg, cb);
                if (!d_mid) {
                    // aligned M collapsed to 1 inside the bracket; keep the side with M > 1
                    hi = mid;
                    continue;
                }
                if (sign_change(d_lo, *d_mid)) {
                    hi = mid;
                } else {
                    lo = mid;
                    d_lo = *d_mid;
                }
            }
            result.found = true;
            result.bracket_low = lo;
            result.bracket_high = hi;
            result.v0 = 0.5 * (lo + hi);
            const auto d_v0 = threshold_difference(result.v0, cfg, cb);
            result.residual = d_v0 ? std::abs(*d_v0) : 0.0;
            return result;
        }
        prev = d;
        prev_v = v;
    }
    return result;
}

}  // namespace dstm
