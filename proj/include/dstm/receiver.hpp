// SPDX-License-Identifier: Apache-2.0
//
// Differential decoders. All of them maximise Re Tr{G * Y_curr^H * A} over the
// codebook, with A = Y_prev (conventional), C * Y_prev (proposed), or the
// row-shifted Y_prev (sliced). Ties go to the lowest index.
#pragma once

#include <vector>

#include "dstm/channel.hpp"
#include "dstm/codebook.hpp"

namespace dstm {

struct DecodeResult {
    int symbol_index = 0;
    double metric = 0.0;
    std::vector<double> metrics_all;
};

DecodeResult decode_conventional(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const Codebook& cb);

DecodeResult decode_proposed(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const CorrelationMatrix& cm,
                             const Codebook& cb);

/// Conventional decoding on rows lag..N_R-1 of y_prev against rows 0..N_R-1-lag of y_curr.
DecodeResult decode_sliced(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, int lag, const Codebook& cb);

/// Argmax of Re Tr{G_k * p} for a precomputed T x T product p = Y_curr^H * A.
/// Allocation-free; used by the Monte Carlo loop.
int decode_index(const ComplexMatrix& product, const Codebook& cb);

/// (sqrt(P) N_T / (P N_T + sigma^2)) C^H y_curr.
ComplexMatrix mmse_estimate(const ComplexMatrix& y_curr, const CorrelationMatrix& cm, const SystemConfig& cfg);

/// Tr{Ybar Xbar^H Xbar Ybar^H} with Xbar = [X_i, X_i G] and Ybar = [C Y_i, Y_{i+1}].
double metric_quadratic(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const CorrelationMatrix& cm,
                        const ComplexMatrix& x_i, const ComplexMatrix& g);

/// Column covariance of W = Y_{i+1} - C Y_i G:
/// sigma^2 C C^H + N_T P (I - C C^H) + sigma^2 I.
ComplexMatrix residual_covariance(const CorrelationMatrix& cm, const SystemConfig& cfg);

}  // namespace dstm
