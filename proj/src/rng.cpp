// SPDX-License-Identifier: Apache-2.0
#include "dstm/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace dstm {

std::uint64_t splitmix64_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = splitmix64_mix(seed);
    for (std::uint64_t w : words) h = splitmix64_mix(h ^ splitmix64_mix(w));
    return h;
}

Fnv1a& Fnv1a::add(std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        state_ ^= (word >> (8 * i)) & 0xffU;
        state_ *= 0x100000001b3ULL;
    }
    return *this;
}

Fnv1a& Fnv1a::add(double value) {
    if (value == 0.0) value = 0.0;  // fold -0.0 into +0.0
    return add(std::bit_cast<std::uint64_t>(value));
}

Fnv1a& Fnv1a::add(std::string_view text) {
    for (unsigned char c : text) {
        state_ ^= c;
        state_ *= 0x100000001b3ULL;
    }
    return add(static_cast<std::uint64_t>(text.size()));
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        word = z ^ (z >> 31);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t Rng::below(std::uint32_t n) {
    const std::uint64_t x = next_u64() >> 32;
    return static_cast<std::uint32_t>((x * n) >> 32);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phase);
    has_spare_ = true;
    return r * std::cos(phase);
}

std::complex<double> Rng::complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

ComplexMatrix Rng::complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, double variance) {
    ComplexMatrix out(rows, cols);
    fill_complex_normal(out, variance);
    return out;
}

void Rng::fill_complex_normal(ComplexMatrix& out, double variance) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) = complex_normal(variance);
    }
}

}  // namespace dstm
