// SPDX-License-Identifier: Apache-2.0
//
// Reproducible random streams. Every draw is defined bit-for-bit by the
// algorithms below, independent of the standard library implementation:
//   - splitmix64 for seeding and for mixing seeds with point hashes
//   - xoshiro256** as the stream generator
//   - uniform doubles from the top 53 bits
//   - standard normals by Box-Muller, both outputs used in order
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "dstm/numerics.hpp"

namespace dstm {

inline constexpr std::string_view kRngAlgorithm = "xoshiro256starstar-splitmix64-boxmuller/v1";

/// One splitmix64 output step applied to `x` (a bijective 64-bit mixer).
std::uint64_t splitmix64_mix(std::uint64_t x);

/// Combines a seed with a list of words into a new 64-bit seed.
std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> words);

/// FNV-1a over raw bytes; used to hash parameter tuples.
class Fnv1a {
public:
    Fnv1a& add(std::uint64_t word);
    Fnv1a& add(double value);
    Fnv1a& add(std::string_view text);
    std::uint64_t value() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform integer in [0, n), n >= 1, by 128-bit multiply-shift.
    std::uint32_t below(std::uint32_t n);
    double normal();
    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance = 1.0);

    /// Matrix of i.i.d. CN(0, variance) entries, filled row by row.
    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0);
    void fill_complex_normal(ComplexMatrix& out, double variance = 1.0);

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dstm
