// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex linear algebra and the two Bessel functions the
// correlation model needs. Matrices are tiny (at most 8x8), so everything is
// dense and row-major.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include "dstm/errors.hpp"

namespace dstm {

template <typename Real>
using ComplexMatrixT =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;

// ---------------------------------------------------------------------------
// Bessel functions
// ---------------------------------------------------------------------------

namespace detail {

// sum_k (-1)^k (x^2/4)^k / (k!)^2, accurate to ~1e-13 absolute for |x| < 12
template <typename Real>
Real j0_series(Real x) {
    const Real q = x * x / Real(4);
    Real term = Real(1);
    Real sum = Real(1);
    for (int k = 1; k < 200; ++k) {
        term *= -q / (Real(k) * Real(k));
        sum += term;
        if (std::abs(term) < std::numeric_limits<Real>::epsilon() * Real(1e-2)) break;
    }
    return sum;
}

// Hankel asymptotic expansion, truncated at its smallest term.
template <typename Real>
Real j0_asymptotic(Real x) {
    Real p = 0;
    Real q = 0;
    Real coeff = 1;  // a_k / x^k with a_k = prod_{j<=k} -(2j-1)^2 / (k! 8^k)
    Real previous = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < 80; ++k) {
        if (k > 0) coeff *= -Real((2 * k - 1) * (2 * k - 1)) / (Real(8 * k) * x);
        const Real mag = std::abs(coeff);
        if (mag > previous) break;
        previous = mag;
        // a_k enters P with sign (-1)^(k/2) for even k and Q with (-1)^((k-1)/2) for odd k
        if (k % 2 == 0) {
            p += ((k / 2) % 2 == 0 ? coeff : -coeff);
        } else {
            q += (((k - 1) / 2) % 2 == 0 ? coeff : -coeff);
        }
        if (mag < std::numeric_limits<Real>::epsilon() * Real(1e-2)) break;
    }
    const Real chi = x - std::numbers::pi_v<Real> / Real(4);
    return std::sqrt(Real(2) / (std::numbers::pi_v<Real> * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// Bessel function of the first kind, order zero.
///
/// Power series below |x| = 12, Hankel asymptotic form above; absolute error
/// stays below 1e-12 in double precision on |x| <= 50.
template <typename Real>
Real bessel_j0(Real x) {
    const Real ax = std::abs(x);
    if (ax < Real(12)) return detail::j0_series(ax);
    return detail::j0_asymptotic(ax);
}

namespace detail {

// sum_k (z^2/4)^k / (k!)^2 in extended precision
template <typename Real>
std::complex<Real> i0_series(std::complex<Real> z) {
    using Acc = std::conditional_t<std::is_same_v<Real, double>, long double, Real>;
    const std::complex<Acc> q = std::complex<Acc>(z) * std::complex<Acc>(z) / Acc(4);
    std::complex<Acc> term(1);
    std::complex<Acc> sum(1);
    for (int k = 1; k < 2000; ++k) {
        term *= q / (Acc(k) * Acc(k));
        sum += term;
        if (std::abs(term) < Acc(1e-16) * std::abs(sum)) break;
    }
    return std::complex<Real>(sum);
}

// (1/pi) int_0^pi e^{z cos t} dt by the midpoint rule, which converges
// geometrically for this periodic integrand; 256 nodes cover |z| <= 100.
template <typename Real>
std::complex<Real> i0_integral(std::complex<Real> z) {
    constexpr int kNodes = 256;
    std::complex<Real> sum(0);
    for (int j = 0; j < kNodes; ++j) {
        sum += std::exp(z * std::cos(std::numbers::pi_v<Real> * (Real(j) + Real(0.5)) / Real(kNodes)));
    }
    return sum / Real(kNodes);
}

}  // namespace detail

/// Modified Bessel function I0 for complex argument.
///
/// Defining power series (accumulated in extended precision) where its terms
/// do not cancel; when |Im z| > |Re z| and |z| > 16 the alternating terms
/// would lose more than 1e-10, so the integral form takes over.
template <typename Real>
std::complex<Real> bessel_i0(std::complex<Real> z) {
    if (!(std::abs(z) <= Real(100))) {
        throw RangeError("bessel_i0: |z| > 100 is outside the supported range");
    }
    if (std::abs(z) > Real(16) && std::abs(z.imag()) > std::abs(z.real())) return detail::i0_integral(z);
    return detail::i0_series(z);
}

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

template <typename Derived>
auto hermitian_transpose(const Eigen::MatrixBase<Derived>& a) {
    return a.adjoint();
}

template <typename A, typename B>
auto matmul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    return (a * b).eval();
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() != a.cols()) throw DimensionError("trace: matrix is not square");
    return a.trace();
}

template <typename Derived>
auto frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
    return a.norm();
}

/// Lower-triangular L with L L^H = A for Hermitian positive semidefinite A.
///
/// Pivots in [-tol, 0] (and positive pivots at rounding level) are treated as
/// exact zeros and the column of L is zeroed, which lets rank-deficient
/// covariances such as I - C C^H with C = I through.
template <typename Derived>
ComplexMatrixT<typename Derived::RealScalar> cholesky_psd(const Eigen::MatrixBase<Derived>& a,
                                                          typename Derived::RealScalar tol = 1e-9) {
    using Real = typename Derived::RealScalar;
    using Cx = std::complex<Real>;
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw DimensionError("cholesky_psd: matrix is not square");
    const Real scale = std::max<Real>(Real(1), a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
        throw DimensionError("cholesky_psd: matrix is not Hermitian within tolerance");
    }

    const Real rounding = Real(16) * std::numeric_limits<Real>::epsilon() * scale * Real(n);
    ComplexMatrixT<Real> l = ComplexMatrixT<Real>::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Cx acc = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) acc -= l(j, k) * std::conj(l(j, k));
        const Real pivot = acc.real();
        if (pivot < -tol) {
            throw NotPsdError("cholesky_psd: pivot " + std::to_string(pivot) + " at column " +
                              std::to_string(j));
        }
        if (pivot <= rounding) continue;  // clamped: column stays zero
        const Real d = std::sqrt(pivot);
        l(j, j) = d;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            Cx s = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / d;
        }
    }
    return l;
}

/// Determinant through LU with partial pivoting; singular input gives 0.
template <typename Derived>
typename Derived::Scalar det_complex(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() != a.cols()) throw DimensionError("det_complex: matrix is not square");
    if (a.rows() == 0) return typename Derived::Scalar(1);
    return a.eval().partialPivLu().determinant();
}

/// Hermitian part of a square matrix, (A + A^H)/2.
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
    return ((a + a.adjoint()) / typename Derived::RealScalar(2)).eval();
}

}  // namespace dstm
