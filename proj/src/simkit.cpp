// SPDX-License-Identifier: Apache-2.0
#include "dstm/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dstm/receiver.hpp"

namespace dstm {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Conventional: return "Conventional";
        case Scheme::Proposed: return "Proposed";
        case Scheme::Sliced: return "Sliced";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "Conventional") return Scheme::Conventional;
    if (name == "Proposed") return Scheme::Proposed;
    if (name == "Sliced") return Scheme::Sliced;
    throw ConfigError("scheme", "unknown scheme '" + std::string(name) + "'");
}

ResolvedPoint resolve_point(const TrialPlan& plan, const Codebook& cb) {
    plan.cfg.validate();
    plan.policy.validate();
    if (plan.n_decisions < 1) throw ConfigError("decisions", "must be >= 1");
    if (plan.decisions_per_chain < 1) throw ConfigError("decisions_per_chain", "must be >= 1");
    if (cb.n_tx() != plan.cfg.n_tx || plan.cfg.codeword_len != plan.cfg.n_tx) {
        throw ConfigError("n_tx", "codebook needs square N_T x N_T codewords matching n_tx");
    }
    ResolvedPoint point;
    point.block_len = block_length(plan.mobility.speed, plan.policy, plan.cfg, cb);
    point.cfg = plan.cfg;
    point.cfg.block_len = point.block_len;
    point.spec = plan.spec_override ? *plan.spec_override : evaluate_correlation(plan.mobility, point.cfg);
    return point;
}

std::uint64_t point_seed(const TrialPlan& plan, const ResolvedPoint& point) {
    Fnv1a h;
    h.add(plan.mobility.speed)
        .add(plan.mobility.direction)
        .add(point.cfg.noise_var)
        .add(point.cfg.antenna_spacing)
        .add(std::uint64_t(point.cfg.n_tx))
        .add(std::uint64_t(point.cfg.n_rx))
        .add(std::uint64_t(point.block_len));
    if (plan.spec_override) {
        h.add(std::uint64_t(plan.spec_override->lag)).add(plan.spec_override->rho_l).add(plan.spec_override->rho_l1);
    }
    return mix_seed(plan.base_seed, {h.value()});
}

namespace {

struct ChainContext {
    const Codebook& cb;
    const CorrelationMatrix& cm;
    const SystemConfig& cfg;
    Scheme scheme;
    int lag;
};

// One independent chain of `length` decisions.
std::int64_t simulate_chain(const ChainContext& ctx, Rng& rng, std::int64_t length) {
    const int n_rx = ctx.cfg.n_rx;
    const int n_tx = ctx.cfg.n_tx;
    const double amp = std::sqrt(ctx.cfg.tx_power);
    const Eigen::Index slice_rows = n_rx - ctx.lag;

    ComplexMatrix h = rng.complex_normal_matrix(n_rx, n_tx);
    ComplexMatrix innovation(n_rx, n_tx);
    ComplexMatrix noise(n_rx, ctx.cfg.codeword_len);
    ComplexMatrix y_prev(n_rx, ctx.cfg.codeword_len);
    ComplexMatrix y_curr(n_rx, ctx.cfg.codeword_len);
    ComplexMatrix cy(n_rx, ctx.cfg.codeword_len);
    ComplexMatrix product(ctx.cfg.codeword_len, ctx.cfg.codeword_len);
    ComplexMatrix hx(n_rx, n_tx);

    DifferentialChain chain(ctx.cb);
    auto receive = [&](ComplexMatrix& y) {
        rng.fill_complex_normal(noise, ctx.cfg.noise_var);
        y.noalias() = amp * (h * chain.current());
        y += noise;
    };
    receive(y_prev);

    std::int64_t errors = 0;
    for (std::int64_t i = 0; i < length; ++i) {
        const int k = static_cast<int>(rng.below(static_cast<std::uint32_t>(ctx.cb.cardinality)));
        chain.encode(k);
        rng.fill_complex_normal(innovation);
        hx.noalias() = ctx.cm.c * h;
        hx.noalias() += ctx.cm.noise_cov_chol * innovation;
        h.swap(hx);
        receive(y_curr);

        switch (ctx.scheme) {
            case Scheme::Conventional: product.noalias() = y_curr.adjoint() * y_prev; break;
            case Scheme::Proposed:
                cy.noalias() = ctx.cm.c * y_prev;
                product.noalias() = y_curr.adjoint() * cy;
                break;
            case Scheme::Sliced:
                product.noalias() = y_curr.topRows(slice_rows).adjoint() * y_prev.bottomRows(slice_rows);
                break;
        }
        if (decode_index(product, ctx.cb) != k) ++errors;
        y_prev.swap(y_curr);
    }
    return errors;
}

template <typename Fn>
void parallel_for(std::int64_t count, int workers, Fn&& fn) {
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::int64_t>(workers, count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::int64_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

ChainTotals run_resolved(const TrialPlan& plan, const Codebook& cb, const ResolvedPoint& point, int workers) {
    if (plan.scheme == Scheme::Sliced && !(point.spec.lag < plan.cfg.n_rx)) {
        throw ModelViolation("sliced decoding needs lag < N_R");
    }
    const CorrelationMatrix cm = build_correlation_matrix(point.spec, point.cfg.n_rx);
    const ChainContext ctx{cb, cm, point.cfg, plan.scheme, plan.scheme == Scheme::Sliced ? point.spec.lag : 0};
    const std::uint64_t seed = point_seed(plan, point);
    const std::int64_t per_chain = plan.decisions_per_chain;
    const std::int64_t n_chains = (plan.n_decisions + per_chain - 1) / per_chain;

    std::vector<std::int64_t> errors(n_chains, 0);
    parallel_for(n_chains, workers, [&](std::int64_t j) {
        Rng rng(mix_seed(seed, {std::uint64_t(j)}));
        const std::int64_t length = std::min(per_chain, plan.n_decisions - j * per_chain);
        errors[j] = simulate_chain(ctx, rng, length);
    });

    ChainTotals totals;
    totals.decisions = plan.n_decisions;
    for (std::int64_t e : errors) totals.errors += e;
    return totals;
}

}  // namespace

ChainTotals run_chain(const TrialPlan& plan, const Codebook& cb) {
    return run_resolved(plan, cb, resolve_point(plan, cb), plan.workers);
}

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t decisions, double confidence) {
    if (decisions < 1 || errors < 0 || errors > decisions) {
        throw std::invalid_argument("wilson_interval: need 0 <= errors <= decisions, decisions >= 1");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("wilson_interval: confidence in (0,1)");
    // two-sided normal quantile: erfc(z / sqrt 2) = 1 - confidence, by bisection
    const double alpha = 1.0 - confidence;
    double lo = 0.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(mid / std::numbers::sqrt2) > alpha ? lo : hi) = mid;
    }
    const double z = 0.5 * (lo + hi);
    const double n = static_cast<double>(decisions);
    const double p = errors / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // the bounds are exact at the ends; the formula leaves rounding residue there
    const double low = errors == 0 ? 0.0 : std::max(0.0, centre - half);
    const double high = errors == decisions ? 1.0 : std::min(1.0, centre + half);
    return {low, high};
}

std::vector<TrialPlan> expand_sweep(const SweepAxes& axes, const TrialPlan& plan_template) {
    auto or_default = [](const auto& axis, auto fallback) {
        using T = typename std::decay_t<decltype(axis)>::value_type;
        return axis.empty() ? std::vector<T>{static_cast<T>(fallback)} : axis;
    };
    const auto spacings = or_default(axes.spacings, plan_template.cfg.antenna_spacing);
    const auto n_rx = or_default(axes.n_rx, plan_template.cfg.n_rx);
    const auto snrs = or_default(axes.snr_db, plan_template.cfg.snr_db());
    const bool keep_noise = axes.snr_db.empty();

    std::vector<TrialPlan> plans;
    for (const auto& policy : axes.policies) {
        for (double d : spacings) {
            for (int nr : n_rx) {
                for (double theta : axes.directions) {
                    for (Scheme scheme : axes.schemes) {
                        for (double snr : snrs) {
                            for (double v : axes.speeds) {
                                TrialPlan p = plan_template;
                                p.policy = policy;
                                p.cfg.antenna_spacing = d;
                                p.cfg.n_rx = nr;
                                if (!keep_noise) p.cfg.set_snr_db(snr);
                                p.mobility = {v, theta};
                                p.scheme = scheme;
                                plans.push_back(std::move(p));
                            }
                        }
                    }
                }
            }
        }
    }
    return plans;
}

SweepRecord simulate_point(const TrialPlan& plan, const Codebook& cb) {
    const ResolvedPoint point = resolve_point(plan, cb);
    const ChainTotals totals = run_resolved(plan, cb, point, 1);

    SweepRecord r;
    r.scheme = plan.scheme;
    r.policy = to_string(plan.policy);
    r.v = plan.mobility.speed;
    r.theta = plan.mobility.direction;
    r.block_len = point.block_len;
    r.snr_db = point.cfg.snr_db();
    r.spacing = point.cfg.antenna_spacing;
    r.n_rx = point.cfg.n_rx;
    r.decisions = totals.decisions;
    r.errors = totals.errors;
    r.ser = double(totals.errors) / double(totals.decisions);
    std::tie(r.ci_low, r.ci_high) = wilson_interval(totals.errors, totals.decisions);
    r.spec = point.spec;
    if (point.spec.case_tag == CorrelationCase::CaseII && point.spec.lag < point.cfg.n_rx) {
        const double union_factor = cb.cardinality - 1;
        r.pep_bound = union_factor * worst_pair_bound(cb, point.spec, point.cfg, BoundKind::Special).linear;
        r.pep_floor = union_factor * worst_pair_bound(cb, point.spec, point.cfg, BoundKind::Floor).linear;
    }
    return r;
}

std::vector<SweepRecord> run_points(const std::vector<TrialPlan>& plans, const Codebook& cb, int workers) {
    std::vector<SweepRecord> records(plans.size());
    parallel_for(static_cast<std::int64_t>(plans.size()), workers,
                 [&](std::int64_t i) { records[i] = simulate_point(plans[i], cb); });
    return records;
}

std::vector<SweepRecord> sweep(const SweepAxes& axes, const TrialPlan& plan_template, const Codebook& cb,
                               int workers) {
    return run_points(expand_sweep(axes, plan_template), cb, workers);
}

}  // namespace dstm
