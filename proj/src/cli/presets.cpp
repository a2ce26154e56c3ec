// SPDX-License-Identifier: Apache-2.0
#include "dstm/cli/presets.hpp"

#include <cmath>
#include <numbers>

namespace dstm::cli {

namespace {

std::vector<double> speed_grid(double hi, double step) {
    std::vector<double> v;
    for (int i = 0; i * step <= hi + 1e-9; ++i) v.push_back(i * step);
    return v;
}

TrialPlan base_plan(const RunConfig& rc, Scheme scheme, double v, int m) {
    TrialPlan p = rc.plan_template();
    p.scheme = scheme;
    p.mobility = {v, 0.0};
    p.policy = AdaptationPolicy::fixed(m);
    p.cfg.block_len = m;
    return p;
}

Preset fig5(const RunConfig& rc) {
    Preset p{"fig5", {}, {}};
    SweepAxes axes;
    axes.directions = {0.0, std::numbers::pi / 16, std::numbers::pi / 8, std::numbers::pi / 4};
    axes.schemes = {Scheme::Conventional, Scheme::Proposed};
    axes.speeds = speed_grid(200.0, 5.0);
    axes.policies = {AdaptationPolicy::fixed(1)};
    TrialPlan t = base_plan(rc, Scheme::Proposed, 0.0, 1);
    p.plans = expand_sweep(axes, t);
    return p;
}

Preset fig7(const RunConfig& rc) {
    Preset p{"fig7", {}, {}};
    constexpr int m = 5;
    for (double v : {0.0, 50.0, 100.0, 150.0}) {
        p.plans.push_back(base_plan(rc, Scheme::Proposed, v, m));
    }
    for (double v : {0.0, 50.0, 100.0, 150.0}) {
        SystemConfig c = rc.system;
        c.block_len = m;
        const int lag = correlation_for_block(v, m, c).lag;
        if (lag >= rc.system.n_rx) continue;
        TrialPlan q = base_plan(rc, Scheme::Conventional, 0.0, m);
        q.cfg.n_rx = rc.system.n_rx - lag;
        bool seen = false;
        for (const auto& existing : p.plans) {
            seen = seen || (existing.scheme == Scheme::Conventional && existing.cfg.n_rx == q.cfg.n_rx);
        }
        if (!seen) p.plans.push_back(q);
    }
    return p;
}

Preset fig8(const RunConfig& rc) {
    Preset p{"fig8", {}, {}};
    for (double v : {50.0, 100.0, 150.0}) {
        for (int snr = 0; snr <= 30; snr += 2) {
            TrialPlan q = base_plan(rc, Scheme::Proposed, v, 5);
            q.cfg.set_snr_db(snr);
            p.plans.push_back(q);
        }
    }
    return p;
}

Preset fig9(const RunConfig& rc) {
    Preset p{"fig9", {}, {}};
    for (int m = 1; m <= 5; ++m) {
        for (double v : speed_grid(200.0, 5.0)) p.plans.push_back(base_plan(rc, Scheme::Proposed, v, m));
    }
    return p;
}

Preset fig10(const RunConfig& rc, const Codebook& cb) {
    Preset p{"fig10", {}, {}};
    for (double d : {0.05, 0.1}) {
        SystemConfig c = rc.system;
        c.antenna_spacing = d;
        c.block_len = 1;
        const ThresholdResult thr = velocity_threshold(c, cb);
        const std::string key = "v0_D" + format_double(d);
        p.metadata[key] = thr.found ? format_double(thr.v0) : "none";
        const AdaptationPolicy policies[] = {AdaptationPolicy::fixed(1), AdaptationPolicy::optm(64),
                                             AdaptationPolicy::hta(thr.v0)};
        for (const auto& policy : policies) {
            for (double v : speed_grid(150.0, 5.0)) {
                TrialPlan q = base_plan(rc, Scheme::Proposed, v, 1);
                q.cfg.antenna_spacing = d;
                q.policy = policy;
                p.plans.push_back(q);
            }
        }
    }
    return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig5", "fig7", "fig8", "fig9", "fig10"};
    return names;
}

Preset make_preset(const std::string& name, const RunConfig& rc, const Codebook& cb) {
    if (name == "fig5") return fig5(rc);
    if (name == "fig7") return fig7(rc);
    if (name == "fig8") return fig8(rc);
    if (name == "fig9") return fig9(rc);
    if (name == "fig10") return fig10(rc, cb);
    throw ConfigError("preset", "unknown preset '" + name + "' (fig5, fig7, fig8, fig9, fig10)");
}

std::vector<TrialPlan> config_plans(const RunConfig& rc, const Codebook& cb) {
    const std::vector<double> spacings =
        rc.spacings.empty() ? std::vector<double>{rc.system.antenna_spacing} : rc.spacings;
    std::vector<TrialPlan> plans;
    for (double d : spacings) {
        SweepAxes axes;
        axes.policies = {rc.policy};
        if (rc.policy.kind == PolicyKind::HTA && !std::isfinite(rc.policy.v0)) {
            SystemConfig c = rc.system;
            c.antenna_spacing = d;
            c.block_len = 1;
            axes.policies.front().v0 = velocity_threshold(c, cb).v0;
        }
        axes.spacings = {d};
        axes.directions = rc.theta;
        axes.schemes = rc.schemes;
        axes.snr_db = rc.snr_points();
        axes.speeds = rc.speeds();
        auto part = expand_sweep(axes, rc.plan_template());
        plans.insert(plans.end(), part.begin(), part.end());
    }
    return plans;
}

}  // namespace dstm::cli
