// SPDX-License-Identifier: Apache-2.0
//
// Reference evaluations written independently of the library: long double
// scalar code, no Eigen, formulas typed in from their textbook forms.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;
using Mat = std::vector<std::vector<cld>>;

// J0 by its power series with a fixed 120 terms in long double.
inline double j0(double x) {
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k <= 120; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

// First positive zero of J0 by bisection on [2, 3].
inline double j0_first_zero() {
    double lo = 2.0;
    double hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (j0(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::complex<double> i0(std::complex<double> z) {
    const cld q = cld(z) * cld(z) / 4.0L;
    cld term = 1.0L;
    cld sum = 1.0L;
    for (int k = 1; k <= 400; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// The von Mises coefficient, evaluated line by line from its definition.
inline std::complex<double> general_coefficient(int k, double v, double tau, double spacing, double lambda,
                                                double c0, double kappa, double mu, double alpha, double beta) {
    const double pi = std::numbers::pi;
    const double f_d = v / lambda;
    const double a = 2.0 * pi * f_d * tau;
    const double b = 2.0 * pi * k * spacing / lambda;
    const double re = kappa * kappa - a * a - b * b + 2.0 * a * b * std::cos(beta - alpha);
    const double im = -2.0 * kappa * (a * std::cos(mu - alpha) - b * std::cos(mu - beta));
    const std::complex<double> root = std::sqrt(std::complex<double>(re, im));
    return i0(root) / i0(kappa) * std::exp(-c0 * v * std::abs(tau));
}

// SINR as a ratio of expected powers after the second reception:
// N_T^2 P [(N_R - l) rho_l^2 + (N_R - l - 1) rho_l1^2] over
// N_T^2 P [N_R - (N_R - l) rho_l^2 - (N_R - l - 1) rho_l1^2] + N_R N_T sigma^2.
inline double sinr_power_ratio(int lag, double rho_l, double rho_l1, int n_rx, int n_tx, double p, double sigma2) {
    const double s = (n_rx - lag) * rho_l * rho_l + std::max(n_rx - lag - 1, 0) * rho_l1 * rho_l1;
    const double nt2p = double(n_tx) * n_tx * p;
    return nt2p * s / (nt2p * (n_rx - s) + double(n_rx) * n_tx * sigma2);
}

// --- tiny dense helpers for the determinant oracles -----------------------

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<cld>(c, 0.0L)); }

inline Mat mul(const Mat& a, const Mat& b) {
    Mat out = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Mat adj(const Mat& a) {
    Mat out = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = std::conj(a[i][j]);
    return out;
}

// Determinant by Gaussian elimination with partial pivoting.
inline cld det(Mat a) {
    const std::size_t n = a.size();
    cld d = 1.0L;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) == 0.0L) return 0.0L;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const cld f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return d;
}

// Chernoff bound of the conventional unitary receiver, t x n_bar codewords:
// det(I + (rho/t)^2 n_bar^2 / (4 (1 + rho n_bar / t)) [I - C_G C_G'^H C_G' C_G^H / n_bar^2])^-r.
inline double chernoff(const Mat& cg, const Mat& cgp, int n_bar, int t, int r, double rho) {
    const long double s = static_cast<long double>(rho) / t * n_bar;
    const long double f = s * s / (4.0L * (1.0L + s));
    const Mat prod = mul(mul(mul(cg, adj(cgp)), cgp), adj(cg));
    Mat a = zeros(t, t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            a[i][j] = f * ((i == j ? 1.0L : 0.0L) - prod[i][j] / (static_cast<long double>(n_bar) * n_bar)) +
                      (i == j ? 1.0L : 0.0L);
    const long double d = std::abs(det(a));
    return static_cast<double>(std::pow(d, -static_cast<long double>(r)));
}

// Wilson score interval with z typed in for 95 %.
inline std::pair<double, double> wilson95(long errors, long n) {
    const double z = 1.959963984540054;
    const double p = double(errors) / n;
    const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
    const double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n));
    return {centre - half, centre + half};
}

// Decision by exhaustive distance: the index minimising ||y_curr - y_prev G_k||_F,
// i.e. y_prev used as the noisy reference for the current block. Ties go to the
// first index.
template <typename M>
int brute_force_decode(const M& y_prev, const M& y_curr, const std::vector<M>& gens) {
    int best = 0;
    long double best_d = 0.0L;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        long double d = 0.0L;
        for (long i = 0; i < y_curr.rows(); ++i)
            for (long j = 0; j < y_curr.cols(); ++j) {
                cld s = 0.0L;
                for (long m = 0; m < y_prev.cols(); ++m) s += cld(y_prev(i, m)) * cld(gens[k](m, j));
                d += std::norm(cld(y_curr(i, j)) - s);
            }
        if (k == 0 || d < best_d) {
            best_d = d;
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace oracle
