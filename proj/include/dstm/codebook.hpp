// SPDX-License-Identifier: Apache-2.0
//
// Unitary differential space-time codes: a Hadamard initial matrix and a
// diagonal cyclic group {I, G, ..., G^{K-1}}.
#pragma once

#include <cstdint>
#include <vector>

#include "dstm/numerics.hpp"

namespace dstm {

struct Codebook {
    ComplexMatrix initial;                // N_T x T, initial * initial^H = T I
    std::vector<ComplexMatrix> generators;  // G_0 = I, G_k = G^k
    std::vector<int> exponents;           // u, diagonal of G is e^{j 2 pi u / K}
    int cardinality = 0;                  // K

    int n_tx() const { return static_cast<int>(initial.rows()); }
    double bits_per_symbol() const;
    /// Index n with G_k G_m = G_n.
    int compose(int k, int m) const { return (k + m) % cardinality; }
};

/// Sylvester-construction +-1 Hadamard matrix; n must be a power of two.
ComplexMatrix make_hadamard_initial(int n);

/// Throws FullDiversityViolated when some |det(G_k - G_m)| <= 1e-8.
Codebook make_cyclic_codebook(int n_tx, int k_card, const std::vector<int>& exponents);

/// Default 4x4, K = 4 code with u = (1, 1, 3, 3).
Codebook default_codebook();

/// Smallest |det(G_k - G_m)| over k != m.
double min_diversity_product(const Codebook& cb);

/// x_prev * G_k.
ComplexMatrix differential_encode(const ComplexMatrix& x_prev, const Codebook& cb, int symbol_index);

/// Index n with x = initial * G_n within `tol` (Frobenius), or -1.
int code_set_index(const ComplexMatrix& x, const Codebook& cb, double tol = 1e-8);

/// Transmit-side differential chain. Tracks the exact group element alongside
/// the floating-point product and snaps back to initial * G_n every
/// `kSnapInterval` steps.
class DifferentialChain {
public:
    static constexpr std::int64_t kSnapInterval = 1024;

    explicit DifferentialChain(const Codebook& cb);

    const ComplexMatrix& current() const { return x_; }
    int element() const { return element_; }
    std::int64_t steps() const { return steps_; }

    const ComplexMatrix& encode(int symbol_index);
    void reset();

private:
    const Codebook* cb_;
    ComplexMatrix x_;
    ComplexMatrix scratch_;
    int element_ = 0;
    std::int64_t steps_ = 0;
};

}  // namespace dstm
