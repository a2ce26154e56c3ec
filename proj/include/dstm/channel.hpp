// SPDX-License-Identifier: Apache-2.0
//
// Spatial-temporal correlation of a moving receive array and the matrix
// VAR(1) channel it induces: H_{i+1} = C H_i + U_{i+1}, cov(u) = I - C C^H.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dstm/numerics.hpp"
#include "dstm/rng.hpp"

namespace dstm {

inline constexpr double kSpeedOfLight = 2.99792458e8;

/// Physical and signalling parameters. Defaults reproduce the reference
/// high-speed-train setup (4x4 array, T = 4, 5 dB, 50 us symbols, 3 GHz).
struct SystemConfig {
    int n_tx = 4;
    int n_rx = 4;
    int codeword_len = 4;           // T, symbols per codeword
    double tx_power = 1.0;          // P, W per antenna
    double noise_var = 4.0 / 3.1622776601683795;  // sigma_n^2 for 5 dB
    double symbol_duration = 50e-6;  // t_s
    double carrier_freq = 3e9;       // f_c
    double antenna_spacing = 0.05;   // D
    double scatter_decay = 0.1;      // c0, 1/m
    int block_len = 1;               // M, codewords per block

    double wavelength() const { return kSpeedOfLight / carrier_freq; }
    double codeword_duration() const { return codeword_len * symbol_duration; }
    double block_duration() const { return block_len * codeword_duration(); }
    /// SNR per receive antenna, N_T P / sigma_n^2, in dB.
    double snr_db() const;
    void set_snr_db(double snr_db);

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

struct MobilityState {
    double speed = 0.0;      // v >= 0, m/s
    double direction = 0.0;  // theta in (-pi/2, pi/2)

    void validate() const;
};

/// Non-isotropic scattering parameters (von Mises AOA width/mean plus the
/// two geometry angles); only used by the general coefficient model.
struct ScatteringSpec {
    double aoa_width = 0.0;  // kappa
    double aoa_mean = 0.0;   // mu
    double angle_alpha = 0.0;
    double angle_beta = 0.0;
};

enum class CorrelationCase { CaseI, CaseII, CaseIII };

std::string_view to_string(CorrelationCase c);

struct CorrelationSpec {
    CorrelationCase case_tag = CorrelationCase::CaseIII;
    int lag = 0;
    double rho_l = 0.0;
    double rho_l1 = 0.0;
    bool safeguard_applied = false;
};

struct CorrelationMatrix {
    ComplexMatrix c;               // N_R x N_R banded Toeplitz
    ComplexMatrix noise_cov_chol;  // L with L L^H = I - C C^H
    CorrelationSpec spec;
    bool truncated = false;        // lag >= N_R, C forced to zero
};

struct ChannelState {
    ComplexMatrix h;  // N_R x N_T
    long block_index = 0;
};

/// Case and lag from the half-wavelength hit set; coefficients are zero.
CorrelationSpec classify_correlation(const MobilityState& mob, const SystemConfig& cfg);

/// Isotropic-scattering coefficient J0(sqrt(a^2 + b_k^2 - 2 a b_k cos theta)) e^{-c0 v tau}.
double correlation_coefficient_isotropic(int k, const MobilityState& mob, const SystemConfig& cfg);

/// General coefficient with von Mises angle of arrival; complex in general.
Complex correlation_coefficient_general(int k, const MobilityState& mob, const ScatteringSpec& scat,
                                        const SystemConfig& cfg);

inline constexpr double kStationarityMargin = 1e-6;

/// Pair rule: if rho_l^2 + rho_l1^2 > 1 - 1e-6, both are scaled down to that sum.
CorrelationSpec psd_safeguard(const CorrelationSpec& spec);

/// Pair rule followed by a contraction step on the n_rx x n_rx matrix: if the
/// largest singular value s of C has s^2 > 1 - 1e-6, both coefficients are
/// scaled by sqrt(1 - 1e-6)/s. The result always gives a PSD I - C C^H.
CorrelationSpec psd_safeguard(const CorrelationSpec& spec, int n_rx);

/// classify + isotropic coefficients + psd_safeguard(spec, cfg.n_rx).
CorrelationSpec evaluate_correlation(const MobilityState& mob, const SystemConfig& cfg);

/// The banded Toeplitz matrix alone. Bands that fall outside the matrix are dropped.
ComplexMatrix correlation_matrix_entries(const CorrelationSpec& spec, int n_rx);

CorrelationMatrix build_correlation_matrix(const CorrelationSpec& spec, int n_rx);

/// Convenience for tests and examples: single band `rho` on superdiagonal `lag`.
CorrelationMatrix single_band_matrix(int lag, double rho, int n_rx);

ChannelState channel_init(int n_rx, int n_tx, Rng& rng);
ChannelState channel_step(const ChannelState& state, const CorrelationMatrix& cm, Rng& rng);

/// In-place variant of channel_step for hot loops; `scratch` is resized as needed.
void advance_channel(ComplexMatrix& h, const CorrelationMatrix& cm, Rng& rng, ComplexMatrix& scratch);

/// Largest speed for which the channel stays static over one codeword,
/// T t_s <= 0.423 lambda / v.
double coherence_speed_limit(const SystemConfig& cfg);

/// Warning text when `max_speed` breaks the coherence-time assumption.
std::optional<std::string> coherence_warning(const SystemConfig& cfg, double max_speed);

}  // namespace dstm
