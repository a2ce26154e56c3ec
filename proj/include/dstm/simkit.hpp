// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo symbol error rate over the correlated VAR(1) channel.
//
// Every sweep point draws from its own stream, seeded from the base seed and
// a hash of the point's physical parameters (not its position in the sweep
// and not the decoder), so decoders compared at the same point see the same
// channel and noise realizations. Decisions are split into short independent
// chains, each with its own stream, which makes totals independent of how
// chains are distributed across worker threads.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dstm/adaptive.hpp"
#include "dstm/codebook.hpp"

namespace dstm {

enum class Scheme { Conventional, Proposed, Sliced };

std::string_view to_string(Scheme s);
/// Accepts the names printed by to_string (case-sensitive).
Scheme parse_scheme(std::string_view name);

struct TrialPlan {
    Scheme scheme = Scheme::Proposed;
    std::int64_t n_decisions = 100000;
    std::uint64_t base_seed = 1;
    MobilityState mobility;
    SystemConfig cfg;
    AdaptationPolicy policy;
    int decisions_per_chain = 16;
    int workers = 1;  // 0 = one per hardware thread
    /// Bypasses the geometry: simulate exactly this correlation.
    std::optional<CorrelationSpec> spec_override;
};

struct ChainTotals {
    std::int64_t decisions = 0;
    std::int64_t errors = 0;
};

/// Block length, configuration and correlation a plan resolves to.
struct ResolvedPoint {
    int block_len = 1;
    SystemConfig cfg;  // cfg.block_len set to block_len
    CorrelationSpec spec;
};

ResolvedPoint resolve_point(const TrialPlan& plan, const Codebook& cb);

/// Stream seed of a point: mix(base_seed, hash(v, theta, sigma^2, D, N_T, N_R, M)).
std::uint64_t point_seed(const TrialPlan& plan, const ResolvedPoint& point);

ChainTotals run_chain(const TrialPlan& plan, const Codebook& cb);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t decisions, double confidence = 0.95);

struct SweepRecord {
    Scheme scheme = Scheme::Proposed;
    std::string policy;
    double v = 0.0;
    double theta = 0.0;
    int block_len = 1;
    double snr_db = 0.0;
    double spacing = 0.0;
    int n_rx = 0;
    std::int64_t decisions = 0;
    std::int64_t errors = 0;
    double ser = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    CorrelationSpec spec;
    /// (K-1) times the worst-pair single-band bound and floor; Case II only.
    std::optional<double> pep_bound;
    std::optional<double> pep_floor;
};

struct SweepAxes {
    std::vector<AdaptationPolicy> policies{AdaptationPolicy::fixed(1)};
    std::vector<double> spacings;      // empty: keep the template's D
    std::vector<int> n_rx;             // empty: keep the template's N_R
    std::vector<double> directions{0.0};
    std::vector<Scheme> schemes{Scheme::Proposed};
    std::vector<double> snr_db;        // empty: keep the template's sigma^2
    std::vector<double> speeds{0.0};
};

/// Cartesian product of the axes, outermost first in declaration order.
std::vector<TrialPlan> expand_sweep(const SweepAxes& axes, const TrialPlan& plan_template);

/// Runs every plan; points are spread over `workers` threads.
std::vector<SweepRecord> run_points(const std::vector<TrialPlan>& plans, const Codebook& cb, int workers = 1);

std::vector<SweepRecord> sweep(const SweepAxes& axes, const TrialPlan& plan_template, const Codebook& cb,
                               int workers = 1);

/// Record for one simulated point (no threading of its own).
SweepRecord simulate_point(const TrialPlan& plan, const Codebook& cb);

}  // namespace dstm
