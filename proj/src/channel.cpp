// SPDX-License-Identifier: Apache-2.0
#include "dstm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace dstm {

double SystemConfig::snr_db() const {
    return 10.0 * std::log10(n_tx * tx_power / noise_var);
}

void SystemConfig::set_snr_db(double snr_db) {
    noise_var = n_tx * tx_power / std::pow(10.0, snr_db / 10.0);
}

void SystemConfig::validate() const {
    if (n_tx < 1) throw ConfigError("n_tx", "must be >= 1");
    if (n_rx < 1) throw ConfigError("n_rx", "must be >= 1");
    if (codeword_len < n_tx) throw ConfigError("codeword_len", "must be >= n_tx");
    if (block_len < 1) throw ConfigError("block_len", "must be >= 1");
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(name, "must be finite and > 0");
    };
    positive(tx_power, "tx_power");
    positive(noise_var, "noise_var");
    positive(symbol_duration, "symbol_duration");
    positive(carrier_freq, "carrier_freq");
    positive(antenna_spacing, "antenna_spacing");
    positive(scatter_decay, "scatter_decay");
    if (antenna_spacing < 0.5 * wavelength()) {
        std::ostringstream os;
        os << "D = " << antenna_spacing << " m is below half a wavelength (" << 0.5 * wavelength()
           << " m); correlation windows of neighbouring antennas would overlap";
        throw ConfigError("antenna_spacing", os.str());
    }
}

void MobilityState::validate() const {
    if (!(speed >= 0.0) || !std::isfinite(speed)) throw ConfigError("speed", "must be finite and >= 0");
    if (!(std::abs(direction) < std::numbers::pi / 2)) {
        throw ConfigError("direction", "must lie strictly inside (-pi/2, pi/2)");
    }
}

std::string_view to_string(CorrelationCase c) {
    switch (c) {
        case CorrelationCase::CaseI: return "I";
        case CorrelationCase::CaseII: return "II";
        case CorrelationCase::CaseIII: return "III";
    }
    return "?";
}

CorrelationSpec classify_correlation(const MobilityState& mob, const SystemConfig& cfg) {
    mob.validate();
    const double lambda = cfg.wavelength();
    const double spacing = cfg.antenna_spacing;
    if (spacing < 0.5 * lambda) {
        throw ConfigError("antenna_spacing", "D < lambda/2 breaks the two-band correlation structure");
    }
    const double shift = mob.speed * cfg.block_duration();
    const double along = shift * std::cos(mob.direction);
    const double across = shift * std::sin(mob.direction);

    std::vector<int> hits;
    const int last = static_cast<int>(std::ceil(shift / spacing)) + 1;
    for (int l = 0; l <= last; ++l) {
        const double d = std::hypot(along - l * spacing, across);
        if (d < 0.5 * lambda) hits.push_back(l);
    }

    CorrelationSpec spec;
    if (hits.size() == 2) {
        spec.case_tag = CorrelationCase::CaseI;
        spec.lag = hits.front();
    } else if (hits.size() == 1) {
        spec.case_tag = CorrelationCase::CaseII;
        spec.lag = hits.front();
    } else if (hits.empty()) {
        spec.case_tag = CorrelationCase::CaseIII;
        spec.lag = 0;
    } else {
        throw ModelViolation("classify_correlation: more than two antennas inside the half-wavelength radius");
    }
    return spec;
}

namespace {

struct CoefficientArgs {
    double a;    // 2 pi f_D tau
    double b_k;  // 2 pi k D / lambda
    double decay;
};

CoefficientArgs coefficient_args(int k, const MobilityState& mob, const SystemConfig& cfg) {
    const double lambda = cfg.wavelength();
    const double tau = cfg.block_duration();
    const double two_pi = 2.0 * std::numbers::pi;
    return {two_pi * (mob.speed / lambda) * tau, two_pi * k * cfg.antenna_spacing / lambda,
            std::exp(-cfg.scatter_decay * mob.speed * std::abs(tau))};
}

}  // namespace

double correlation_coefficient_isotropic(int k, const MobilityState& mob, const SystemConfig& cfg) {
    if (k < 0) throw std::invalid_argument("correlation_coefficient_isotropic: k must be >= 0");
    const auto [a, b, decay] = coefficient_args(k, mob, cfg);
    const double arg2 = a * a + b * b - 2.0 * a * b * std::cos(mob.direction);
    return bessel_j0(std::sqrt(std::max(arg2, 0.0))) * decay;
}

Complex correlation_coefficient_general(int k, const MobilityState& mob, const ScatteringSpec& scat,
                                        const SystemConfig& cfg) {
    if (k < 0) throw std::invalid_argument("correlation_coefficient_general: k must be >= 0");
    if (scat.aoa_width < 0.0) throw std::invalid_argument("correlation_coefficient_general: kappa < 0");
    const auto [a, b, decay] = coefficient_args(k, mob, cfg);
    const double kappa = scat.aoa_width;
    const double real_part = kappa * kappa - a * a - b * b + 2.0 * a * b * std::cos(scat.angle_beta - scat.angle_alpha);
    const double imag_part = -2.0 * kappa *
                             (a * std::cos(scat.aoa_mean - scat.angle_alpha) - b * std::cos(scat.aoa_mean - scat.angle_beta));
    const Complex arg = std::sqrt(Complex(real_part, imag_part));
    return bessel_i0(arg) / bessel_i0(Complex(kappa, 0.0)) * decay;
}

CorrelationSpec psd_safeguard(const CorrelationSpec& spec) {
    CorrelationSpec out = spec;
    const double s = spec.rho_l * spec.rho_l + spec.rho_l1 * spec.rho_l1;
    const double limit = 1.0 - kStationarityMargin;
    if (s > limit) {
        const double f = std::sqrt(limit / s);
        out.rho_l *= f;
        out.rho_l1 *= f;
        out.safeguard_applied = true;
    }
    return out;
}

ComplexMatrix correlation_matrix_entries(const CorrelationSpec& spec, int n_rx) {
    ComplexMatrix c = ComplexMatrix::Zero(n_rx, n_rx);
    if (spec.case_tag == CorrelationCase::CaseIII || spec.lag < 0 || spec.lag >= n_rx) return c;
    for (int p = 0; p < n_rx; ++p) {
        if (p + spec.lag < n_rx) c(p, p + spec.lag) = spec.rho_l;
        if (spec.case_tag == CorrelationCase::CaseI && p + spec.lag + 1 < n_rx) c(p, p + spec.lag + 1) = spec.rho_l1;
    }
    return c;
}

CorrelationSpec psd_safeguard(const CorrelationSpec& spec, int n_rx) {
    CorrelationSpec out = psd_safeguard(spec);
    const ComplexMatrix c = correlation_matrix_entries(out, n_rx);
    const ComplexMatrix gram = c * c.adjoint();
    const double s2 = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(gram, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .maxCoeff();
    const double limit = 1.0 - kStationarityMargin;
    if (s2 > limit) {
        const double f = std::sqrt(limit / s2);
        out.rho_l *= f;
        out.rho_l1 *= f;
        out.safeguard_applied = true;
    }
    return out;
}

CorrelationSpec evaluate_correlation(const MobilityState& mob, const SystemConfig& cfg) {
    CorrelationSpec spec = classify_correlation(mob, cfg);
    if (spec.case_tag != CorrelationCase::CaseIII) {
        spec.rho_l = correlation_coefficient_isotropic(spec.lag, mob, cfg);
        if (spec.case_tag == CorrelationCase::CaseI) {
            spec.rho_l1 = correlation_coefficient_isotropic(spec.lag + 1, mob, cfg);
        }
    }
    return psd_safeguard(spec, cfg.n_rx);
}

CorrelationMatrix build_correlation_matrix(const CorrelationSpec& spec, int n_rx) {
    if (n_rx < 1) throw DimensionError("build_correlation_matrix: n_rx must be >= 1");
    CorrelationMatrix cm;
    cm.spec = spec;
    cm.truncated = spec.case_tag != CorrelationCase::CaseIII && spec.lag >= n_rx;
    cm.c = correlation_matrix_entries(spec, n_rx);
    const ComplexMatrix ru = ComplexMatrix::Identity(n_rx, n_rx) - cm.c * cm.c.adjoint();
    cm.noise_cov_chol = cholesky_psd(ru, 1e-9);
    return cm;
}

CorrelationMatrix single_band_matrix(int lag, double rho, int n_rx) {
    CorrelationSpec spec;
    spec.case_tag = CorrelationCase::CaseII;
    spec.lag = lag;
    spec.rho_l = rho;
    return build_correlation_matrix(spec, n_rx);
}

ChannelState channel_init(int n_rx, int n_tx, Rng& rng) {
    return {rng.complex_normal_matrix(n_rx, n_tx), 0};
}

void advance_channel(ComplexMatrix& h, const CorrelationMatrix& cm, Rng& rng, ComplexMatrix& scratch) {
    if (cm.c.cols() != h.rows()) throw DimensionError("channel_step: C and H disagree on N_R");
    scratch.resize(h.rows(), h.cols());
    rng.fill_complex_normal(scratch);
    ComplexMatrix next = cm.c * h;
    next.noalias() += cm.noise_cov_chol * scratch;
    h.swap(next);
}

ChannelState channel_step(const ChannelState& state, const CorrelationMatrix& cm, Rng& rng) {
    ChannelState next{state.h, state.block_index + 1};
    ComplexMatrix scratch;
    advance_channel(next.h, cm, rng, scratch);
    return next;
}

double coherence_speed_limit(const SystemConfig& cfg) {
    return 0.423 * cfg.wavelength() / cfg.codeword_duration();
}

std::optional<std::string> coherence_warning(const SystemConfig& cfg, double max_speed) {
    const double limit = coherence_speed_limit(cfg);
    if (max_speed <= limit) return std::nullopt;
    std::ostringstream os;
    os << "speed " << max_speed << " m/s exceeds the coherence limit " << limit
       << " m/s (T*t_s > 0.423*lambda/v); the channel is not static over a codeword";
    return os.str();
}

}  // namespace dstm
