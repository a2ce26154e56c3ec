// SPDX-License-Identifier: Apache-2.0
//
// Closed-form error analysis: equivalent SINR, pairwise error probability
// (PEP) determinant bounds and the high-SNR error floor. Bounds are computed
// as log-determinants and returned in both linear and log10 form.
#pragma once

#include <utility>

#include "dstm/channel.hpp"
#include "dstm/codebook.hpp"

namespace dstm {

struct PepInputs {
    ComplexMatrix g;
    ComplexMatrix g_prime;
    ComplexMatrix initial;
    int n_tx = 4;
    int n_rx = 4;
    int lag = 0;
    CorrelationSpec spec;
    double tx_power = 1.0;
    double noise_var = 1.0;
};

PepInputs make_pep_inputs(const Codebook& cb, int k, int k_prime, const CorrelationSpec& spec,
                          const SystemConfig& cfg);

struct BoundValue {
    double linear = 1.0;
    double log10 = 0.0;
};

/// Equivalent SINR gamma for a (possibly two-band) correlation spec.
double sinr_gamma(const CorrelationSpec& spec, int n_rx, int n_tx, double tx_power, double noise_var);

/// I + gamma^2/(1+2gamma) [I - (1/4N_T) D (I + G' G^H)(I + G G'^H) D^H].
ComplexMatrix pep_general_argument(const PepInputs& inp);

/// det(pep_general_argument)^-(N_R - l). Throws ModelViolation when the
/// argument is not Hermitian positive definite.
BoundValue pep_bound_general(const PepInputs& inp);

/// Chernoff bound of the conventional receiver for t x n_bar codewords.
BoundValue pep_chernoff_baseline(const ComplexMatrix& codeword_g, const ComplexMatrix& codeword_g_prime, int n_bar,
                                 int t, int r, double rho);

/// (gamma_1, gamma_2) for a single-band spec; throws for Case I.
std::pair<double, double> gamma_pair(const CorrelationSpec& spec, int n_tx, double tx_power, double noise_var);

/// Harmonic-mean form 2 g1 g2 / (g1 + g2), 0 when both vanish.
double gamma_harmonic(double gamma1, double gamma2);

/// Single-band bound: factor gamma_h^2 / (4 N_T (1 + 2 gamma_h)).
BoundValue pep_bound_special(const PepInputs& inp);

/// SNR-independent floor: factor rho^4 / (N_T (1 + 3 rho^2)(1 - rho^2)).
/// rho^2 >= 1 has no floor and returns linear 0, log10 -inf.
BoundValue pep_floor(const PepInputs& inp);

enum class BoundKind { Auto, General, Special, Floor };

/// Largest pairwise bound over ordered pairs k != k'. Auto picks the general
/// bound for Case I, the special bound for Case II and 1 for Case III or when
/// the band lies outside the array (lag >= N_R).
BoundValue worst_pair_bound(const Codebook& cb, const CorrelationSpec& spec, const SystemConfig& cfg,
                            BoundKind kind = BoundKind::Auto);

}  // namespace dstm
