// SPDX-License-Identifier: Apache-2.0
#include "dstm/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <tuple>

#include "dstm/cli/config.hpp"
#include "dstm/cli/plot_script.hpp"
#include "dstm/cli/presets.hpp"

namespace dstm::cli {

namespace {

std::string case_cell(const CorrelationSpec& s) { return std::string(to_string(s.case_tag)); }

std::vector<TrialPlan> plans_for(const CommandOptions& opts, const RunConfig& rc, const Codebook& cb,
                                 RunManifest& manifest) {
    if (opts.preset.empty()) return config_plans(rc, cb);
    Preset p = make_preset(opts.preset, rc, cb);
    manifest.extra.insert(p.metadata.begin(), p.metadata.end());
    return std::move(p.plans);
}

void check_coherence(const std::vector<TrialPlan>& plans, CommandResult& result) {
    double worst = 0.0;
    const SystemConfig* cfg = nullptr;
    for (const auto& p : plans) {
        if (!cfg || p.mobility.speed > worst) {
            worst = p.mobility.speed;
            cfg = &p.cfg;
        }
    }
    if (!cfg) return;
    if (auto w = coherence_warning(*cfg, worst)) {
        result.warnings.push_back(*w);
        result.manifest.extra["warning"] = *w;
    }
}

CsvTable correlation_table(const std::string& preset, const std::vector<TrialPlan>& plans, const Codebook& cb) {
    CsvTable t;
    t.header = {"preset", "v_mps", "theta_rad", "M", "D_m", "n_rx", "case", "l", "rho_l", "rho_l1",
                "safeguard_applied"};
    std::set<std::tuple<double, double, int, double, int>> seen;
    for (const auto& plan : plans) {
        const ResolvedPoint pt = resolve_point(plan, cb);
        const auto key = std::make_tuple(plan.mobility.speed, plan.mobility.direction, pt.block_len,
                                         pt.cfg.antenna_spacing, pt.cfg.n_rx);
        if (!seen.insert(key).second) continue;
        t.rows.push_back({preset, format_double(plan.mobility.speed), format_double(plan.mobility.direction),
                          std::to_string(pt.block_len), format_double(pt.cfg.antenna_spacing),
                          std::to_string(pt.cfg.n_rx), case_cell(pt.spec), std::to_string(pt.spec.lag),
                          format_double(pt.spec.rho_l), format_double(pt.spec.rho_l1),
                          pt.spec.safeguard_applied ? "1" : "0"});
    }
    return t;
}

CsvTable bound_table(const std::string& preset, const std::vector<TrialPlan>& plans, const Codebook& cb) {
    CsvTable t;
    t.header = {"preset", "v_mps", "theta_rad", "M",     "snr_db",    "D_m",           "n_rx",     "case",
                "l",      "rho_l", "rho_l1",    "gamma", "pep_bound", "pep_bound_log10", "pep_floor"};
    const double union_factor = cb.cardinality - 1;
    std::set<std::tuple<double, double, int, double, double, int>> seen;
    for (const auto& plan : plans) {
        const ResolvedPoint pt = resolve_point(plan, cb);
        const auto key = std::make_tuple(plan.mobility.speed, plan.mobility.direction, pt.block_len,
                                         pt.cfg.noise_var, pt.cfg.antenna_spacing, pt.cfg.n_rx);
        if (!seen.insert(key).second) continue;
        const SystemConfig& c = pt.cfg;
        const double gamma = sinr_gamma(pt.spec, c.n_rx, c.n_tx, c.tx_power, c.noise_var);
        const BoundValue b = worst_pair_bound(cb, pt.spec, c);
        std::string floor_cell;
        if (pt.spec.case_tag == CorrelationCase::CaseII) {
            floor_cell = format_double(union_factor * worst_pair_bound(cb, pt.spec, c, BoundKind::Floor).linear);
        }
        t.rows.push_back({preset, format_double(plan.mobility.speed), format_double(plan.mobility.direction),
                          std::to_string(pt.block_len), format_double(c.snr_db()), format_double(c.antenna_spacing),
                          std::to_string(c.n_rx), case_cell(pt.spec), std::to_string(pt.spec.lag),
                          format_double(pt.spec.rho_l), format_double(pt.spec.rho_l1), format_double(gamma),
                          format_double(union_factor * b.linear),
                          format_double(b.log10 + std::log10(union_factor)), floor_cell});
    }
    return t;
}

CsvTable block_length_table(const std::string& preset, const std::vector<TrialPlan>& plans, const Codebook& cb) {
    CsvTable t;
    t.header = {"preset", "D_m", "v_mps", "policy", "M", "case", "l", "rho_l", "rho_l1", "pep_bound_log10"};
    std::set<std::tuple<double, double, std::string>> seen;
    for (const auto& plan : plans) {
        const std::string policy = to_string(plan.policy);
        if (!seen.insert({plan.cfg.antenna_spacing, plan.mobility.speed, policy}).second) continue;
        const ResolvedPoint pt = resolve_point(plan, cb);
        const BoundValue b = worst_pair_bound(cb, pt.spec, pt.cfg);
        t.rows.push_back({preset, format_double(pt.cfg.antenna_spacing), format_double(plan.mobility.speed), policy,
                          std::to_string(pt.block_len), case_cell(pt.spec), std::to_string(pt.spec.lag),
                          format_double(pt.spec.rho_l), format_double(pt.spec.rho_l1), format_double(b.log10)});
    }
    return t;
}

// Fixed(block_len), OptM(m_max) and HTA over the config speed axis, per spacing.
std::vector<TrialPlan> adaptive_plans(const RunConfig& rc, const Codebook& cb, RunManifest& manifest) {
    const std::vector<double> spacings =
        rc.spacings.empty() ? std::vector<double>{rc.system.antenna_spacing} : rc.spacings;
    std::vector<TrialPlan> plans;
    for (double d : spacings) {
        SystemConfig c = rc.system;
        c.antenna_spacing = d;
        c.block_len = 1;
        const ThresholdResult thr = velocity_threshold(c, cb);
        manifest.extra["v0_D" + format_double(d)] = thr.found ? format_double(thr.v0) : "none";
        const AdaptationPolicy policies[] = {AdaptationPolicy::fixed(rc.system.block_len),
                                             AdaptationPolicy::optm(rc.policy.m_max), AdaptationPolicy::hta(thr.v0)};
        for (const auto& policy : policies) {
            for (double v : rc.speeds()) {
                TrialPlan p = rc.plan_template();
                p.cfg.antenna_spacing = d;
                p.policy = policy;
                p.mobility = {v, 0.0};
                plans.push_back(p);
            }
        }
    }
    return plans;
}

}  // namespace

CommandResult execute(const CommandOptions& opts) {
    RunConfig rc = load_config(opts.config_path);
    if (opts.seed) rc.seed = *opts.seed;
    if (opts.workers) rc.workers = *opts.workers;
    const Codebook cb = rc.codebook();

    CommandResult result;
    RunManifest& m = result.manifest;
    m.command = opts.command;
    m.preset = opts.preset;
    m.base_seed = rc.seed;
    m.tool_version = kToolVersion;
    m.rng_algorithm = std::string(kRngAlgorithm);
    m.timestamp = utc_timestamp();
    m.config = config_snapshot(rc);
    const std::string preset_cell = opts.preset.empty() ? "custom" : opts.preset;

    if (opts.command == "correlation") {
        const auto plans = plans_for(opts, rc, cb, m);
        check_coherence(plans, result);
        result.table = correlation_table(preset_cell, plans, cb);
    } else if (opts.command == "pep-bound") {
        const auto plans = plans_for(opts, rc, cb, m);
        check_coherence(plans, result);
        result.table = bound_table(preset_cell, plans, cb);
    } else if (opts.command == "adaptive") {
        std::vector<TrialPlan> plans;
        if (opts.preset == "fig10") {
            plans = plans_for(opts, rc, cb, m);
        } else if (opts.preset.empty()) {
            plans = adaptive_plans(rc, cb, m);
        } else {
            throw ConfigError("preset", "adaptive supports only the fig10 preset");
        }
        check_coherence(plans, result);
        result.table = block_length_table(preset_cell, plans, cb);
    } else if (opts.command == "ser-sweep") {
        const auto plans = plans_for(opts, rc, cb, m);
        check_coherence(plans, result);
        m.extra["decisions_per_point"] = std::to_string(rc.decisions);
        result.table = ser_table(opts.preset, run_points(plans, cb, rc.workers));
        if (opts.preset == "fig10") result.side_tables.push_back({".mtable.csv", block_length_table(preset_cell, plans, cb)});
    } else {
        throw ConfigError("command", "unknown command '" + opts.command + "'");
    }
    return result;
}

int run_command(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const CommandResult r = execute(opts);
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';
        const std::string csv = render_csv(r.table);
        const std::string manifest = render_manifest(r.manifest);
        if (opts.out.empty()) {
            out << csv;
            err << manifest;
            for (const auto& [suffix, table] : r.side_tables) err << "# side table " << suffix << "\n" << render_csv(table);
            if (opts.emit_plot) err << "warning: --emit-plot needs --out; no script written\n";
            return kSuccess;
        }
        auto write = [](const std::string& path, const std::string& text) {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw ConfigError("out", "cannot write '" + path + "'");
            f << text;
        };
        write(opts.out, csv);
        write(opts.out + ".manifest", manifest);
        for (const auto& [suffix, table] : r.side_tables) write(opts.out + suffix, render_csv(table));
        if (opts.emit_plot) {
            if (r.table.column("ser") < 0) {
                err << "warning: --emit-plot applies to ser-sweep output only\n";
            } else {
                const PlotScript script = emit_plot_script(opts.out);
                if (!script.warning.empty()) err << "warning: " << script.warning << '\n';
            }
        }
        return kSuccess;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "model violation: " << e.what() << '\n';
        return kModelViolation;
    }
}

}  // namespace dstm::cli
