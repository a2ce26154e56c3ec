// SPDX-License-Identifier: Apache-2.0
#include "dstm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dstm {

namespace {

int diversity_exponent(int n_rx, int lag) { return std::max(n_rx - lag, 0); }

void check_inputs(const PepInputs& inp, const char* who) {
    const Eigen::Index n = inp.n_tx;
    if (inp.g.rows() != n || inp.g.cols() != n || inp.g_prime.rows() != n || inp.g_prime.cols() != n ||
        inp.initial.rows() != n || inp.initial.cols() != n) {
        throw DimensionError(std::string(who) + ": G, G' and the initial matrix must be N_T x N_T");
    }
}

// log det of a Hermitian positive definite matrix; the caller names itself for errors.
double log_det_hpd(const ComplexMatrix& a, const char* who) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw ModelViolation(std::string(who) + ": determinant argument is not Hermitian");
    }
    const Eigen::LLT<ComplexMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success) {
        throw ModelViolation(std::string(who) + ": determinant argument is not positive definite");
    }
    double log_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i).real());
    return log_det;
}

BoundValue from_log_det(double log_det, int exponent) {
    BoundValue b;
    b.log10 = -exponent * log_det / std::numbers::ln10;
    b.linear = std::pow(10.0, b.log10);
    return b;
}

// I + factor * D (G - G')(G - G')^H D^H, shared by the special bound and the floor.
BoundValue difference_bound(const PepInputs& inp, double factor, const char* who) {
    check_inputs(inp, who);
    const ComplexMatrix d = inp.initial * (inp.g - inp.g_prime);
    const ComplexMatrix a = ComplexMatrix::Identity(inp.n_tx, inp.n_tx) + factor * (d * d.adjoint());
    return from_log_det(log_det_hpd(a, who), diversity_exponent(inp.n_rx, inp.lag));
}

}  // namespace

PepInputs make_pep_inputs(const Codebook& cb, int k, int k_prime, const CorrelationSpec& spec,
                          const SystemConfig& cfg) {
    PepInputs inp;
    inp.g = cb.generators.at(k);
    inp.g_prime = cb.generators.at(k_prime);
    inp.initial = cb.initial;
    inp.n_tx = cfg.n_tx;
    inp.n_rx = cfg.n_rx;
    inp.lag = spec.lag;
    inp.spec = spec;
    inp.tx_power = cfg.tx_power;
    inp.noise_var = cfg.noise_var;
    return inp;
}

double sinr_gamma(const CorrelationSpec& spec, int n_rx, int n_tx, double tx_power, double noise_var) {
    if (spec.lag < 0 || spec.lag > n_rx) throw std::invalid_argument("sinr_gamma: lag outside [0, N_R]");
    const double w0 = std::max(1.0 - double(spec.lag) / n_rx, 0.0);
    const double w1 = std::max(1.0 - double(spec.lag + 1) / n_rx, 0.0);
    const double signal = w0 * spec.rho_l * spec.rho_l + w1 * spec.rho_l1 * spec.rho_l1;
    const double denom = 1.0 - signal + noise_var / (n_tx * tx_power);
    if (!(denom > 0.0)) throw ModelViolation("sinr_gamma: non-positive interference-plus-noise term");
    return signal / denom;
}

ComplexMatrix pep_general_argument(const PepInputs& inp) {
    check_inputs(inp, "pep_bound_general");
    const double gamma = sinr_gamma(inp.spec, inp.n_rx, inp.n_tx, inp.tx_power, inp.noise_var);
    const Eigen::Index n = inp.n_tx;
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const ComplexMatrix inner = (eye + inp.g_prime * inp.g.adjoint()) * (eye + inp.g * inp.g_prime.adjoint());
    const ComplexMatrix bracket = eye - (inp.initial * inner * inp.initial.adjoint()) / (4.0 * n);
    return eye + (gamma * gamma / (1.0 + 2.0 * gamma)) * bracket;
}

BoundValue pep_bound_general(const PepInputs& inp) {
    const ComplexMatrix a = pep_general_argument(inp);
    return from_log_det(log_det_hpd(a, "pep_bound_general"), diversity_exponent(inp.n_rx, inp.lag));
}

BoundValue pep_chernoff_baseline(const ComplexMatrix& codeword_g, const ComplexMatrix& codeword_g_prime, int n_bar,
                                 int t, int r, double rho) {
    if (codeword_g.rows() != t || codeword_g.cols() != n_bar || codeword_g_prime.rows() != t ||
        codeword_g_prime.cols() != n_bar) {
        throw DimensionError("pep_chernoff_baseline: codewords must be t x n_bar");
    }
    const double s = rho / t * n_bar;
    const double factor = s * s / (4.0 * (1.0 + s));
    const ComplexMatrix cross = codeword_g * codeword_g_prime.adjoint();
    const ComplexMatrix eye = ComplexMatrix::Identity(t, t);
    const ComplexMatrix a = eye + factor * (eye - cross * cross.adjoint() / (double(n_bar) * n_bar));
    return from_log_det(log_det_hpd(a, "pep_chernoff_baseline"), r);
}

std::pair<double, double> gamma_pair(const CorrelationSpec& spec, int n_tx, double tx_power, double noise_var) {
    if (spec.case_tag == CorrelationCase::CaseI) {
        throw std::invalid_argument("gamma_pair: defined for single-band correlation only");
    }
    const double gamma1 = n_tx * tx_power / noise_var;
    const double r2 = spec.rho_l * spec.rho_l;
    const double gamma2 = r2 >= 1.0 ? gamma1 : r2 / (1.0 - r2 + noise_var / (n_tx * tx_power));
    return {gamma1, gamma2};
}

double gamma_harmonic(double gamma1, double gamma2) {
    const double sum = gamma1 + gamma2;
    return sum > 0.0 ? 2.0 * gamma1 * gamma2 / sum : 0.0;
}

BoundValue pep_bound_special(const PepInputs& inp) {
    const auto [g1, g2] = gamma_pair(inp.spec, inp.n_tx, inp.tx_power, inp.noise_var);
    const double gh = gamma_harmonic(g1, g2);
    return difference_bound(inp, gh * gh / (4.0 * inp.n_tx * (1.0 + 2.0 * gh)), "pep_bound_special");
}

BoundValue pep_floor(const PepInputs& inp) {
    if (inp.spec.case_tag == CorrelationCase::CaseI) {
        throw std::invalid_argument("pep_floor: defined for single-band correlation only");
    }
    const double r2 = inp.spec.rho_l * inp.spec.rho_l;
    if (r2 >= 1.0) return {0.0, -std::numeric_limits<double>::infinity()};
    return difference_bound(inp, r2 * r2 / (inp.n_tx * (1.0 + 3.0 * r2) * (1.0 - r2)), "pep_floor");
}

BoundValue worst_pair_bound(const Codebook& cb, const CorrelationSpec& spec, const SystemConfig& cfg, BoundKind kind) {
    if (kind == BoundKind::Auto) {
        // no band inside the array: the previous block carries no information
        if (spec.case_tag == CorrelationCase::CaseIII || spec.lag >= cfg.n_rx) return {};
        kind = spec.case_tag == CorrelationCase::CaseI ? BoundKind::General : BoundKind::Special;
    }
    BoundValue worst{0.0, -std::numeric_limits<double>::infinity()};
    for (int k = 0; k < cb.cardinality; ++k) {
        for (int m = 0; m < cb.cardinality; ++m) {
            if (k == m) continue;
            const PepInputs inp = make_pep_inputs(cb, k, m, spec, cfg);
            BoundValue b;
            switch (kind) {
                case BoundKind::General: b = pep_bound_general(inp); break;
                case BoundKind::Special: b = pep_bound_special(inp); break;
                case BoundKind::Floor: b = pep_floor(inp); break;
                case BoundKind::Auto: break;
            }
            if (b.log10 > worst.log10) worst = b;
        }
    }
    return worst;
}

}  // namespace dstm
