// SPDX-License-Identifier: Apache-2.0
#include "dstm/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dstm {

double Codebook::bits_per_symbol() const { return std::log2(static_cast<double>(cardinality)); }

ComplexMatrix make_hadamard_initial(int n) {
    if (n < 1 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("make_hadamard_initial: n = " + std::to_string(n) + " is not a power of two");
    }
    ComplexMatrix h = ComplexMatrix::Ones(1, 1);
    while (h.rows() < n) {
        const Eigen::Index m = h.rows();
        ComplexMatrix next(2 * m, 2 * m);
        next << h, h, h, -h;
        h = std::move(next);
    }
    return h;
}

Codebook make_cyclic_codebook(int n_tx, int k_card, const std::vector<int>& exponents) {
    if (k_card < 2) throw std::invalid_argument("make_cyclic_codebook: K must be >= 2");
    if (static_cast<int>(exponents.size()) != n_tx) {
        throw DimensionError("make_cyclic_codebook: need one exponent per transmit antenna");
    }
    Codebook cb;
    cb.initial = make_hadamard_initial(n_tx);
    cb.exponents = exponents;
    cb.cardinality = k_card;
    cb.generators.reserve(k_card);
    for (int k = 0; k < k_card; ++k) {
        ComplexMatrix g = ComplexMatrix::Zero(n_tx, n_tx);
        for (int i = 0; i < n_tx; ++i) {
            // reduce the exponent first so that G^k is exact on the unit circle grid
            const long e = ((static_cast<long>(exponents[i]) * k) % k_card + k_card) % k_card;
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(e) / k_card;
            g(i, i) = std::polar(1.0, phase);
        }
        cb.generators.push_back(std::move(g));
    }
    const double dmin = min_diversity_product(cb);
    if (!(dmin > 1e-8)) {
        throw FullDiversityViolated("make_cyclic_codebook: min |det(G_k - G_m)| = " + std::to_string(dmin));
    }
    return cb;
}

Codebook default_codebook() { return make_cyclic_codebook(4, 4, {1, 1, 3, 3}); }

double min_diversity_product(const Codebook& cb) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cb.cardinality; ++k) {
        for (int m = k + 1; m < cb.cardinality; ++m) {
            dmin = std::min(dmin, std::abs(det_complex(cb.generators[k] - cb.generators[m])));
        }
    }
    return dmin;
}

ComplexMatrix differential_encode(const ComplexMatrix& x_prev, const Codebook& cb, int symbol_index) {
    if (symbol_index < 0 || symbol_index >= cb.cardinality) {
        throw std::out_of_range("differential_encode: symbol index " + std::to_string(symbol_index));
    }
    return matmul(x_prev, cb.generators[symbol_index]);
}

int code_set_index(const ComplexMatrix& x, const Codebook& cb, double tol) {
    if (x.rows() != cb.initial.rows() || x.cols() != cb.initial.cols()) return -1;
    for (int n = 0; n < cb.cardinality; ++n) {
        if ((x - cb.initial * cb.generators[n]).norm() <= tol) return n;
    }
    return -1;
}

DifferentialChain::DifferentialChain(const Codebook& cb) : cb_(&cb), x_(cb.initial) {}

void DifferentialChain::reset() {
    x_ = cb_->initial;
    element_ = 0;
    steps_ = 0;
}

const ComplexMatrix& DifferentialChain::encode(int symbol_index) {
    if (symbol_index < 0 || symbol_index >= cb_->cardinality) {
        throw std::out_of_range("DifferentialChain::encode: symbol index " + std::to_string(symbol_index));
    }
    scratch_.noalias() = x_ * cb_->generators[symbol_index];
    x_.swap(scratch_);
    element_ = cb_->compose(element_, symbol_index);
    if (++steps_ % kSnapInterval == 0) x_.noalias() = cb_->initial * cb_->generators[element_];
    return x_;
}

}  // namespace dstm
