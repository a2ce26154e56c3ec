// SPDX-License-Identifier: Apache-2.0
#include "dstm/receiver.hpp"

#include <cmath>

namespace dstm {

namespace {

double generator_metric(const ComplexMatrix& g, const ComplexMatrix& product) {
    // Re Tr{G P} = Re sum_ij G_ij P_ji
    return (g.transpose().cwiseProduct(product)).sum().real();
}

void check_pair(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const Codebook& cb, const char* who) {
    if (y_prev.rows() != y_curr.rows() || y_prev.cols() != y_curr.cols()) {
        throw DimensionError(std::string(who) + ": y_prev and y_curr shapes differ");
    }
    if (y_curr.cols() != cb.n_tx()) {
        throw DimensionError(std::string(who) + ": codeword length must equal N_T for a square generator");
    }
}

DecodeResult decode_product(const ComplexMatrix& product, const Codebook& cb) {
    DecodeResult r;
    r.metrics_all.reserve(cb.cardinality);
    for (int k = 0; k < cb.cardinality; ++k) {
        const double m = generator_metric(cb.generators[k], product);
        r.metrics_all.push_back(m);
        if (k == 0 || m > r.metric) {
            r.metric = m;
            r.symbol_index = k;
        }
    }
    return r;
}

}  // namespace

int decode_index(const ComplexMatrix& product, const Codebook& cb) {
    int best = 0;
    double best_metric = generator_metric(cb.generators[0], product);
    for (int k = 1; k < cb.cardinality; ++k) {
        const double m = generator_metric(cb.generators[k], product);
        if (m > best_metric) {
            best_metric = m;
            best = k;
        }
    }
    return best;
}

DecodeResult decode_conventional(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const Codebook& cb) {
    check_pair(y_prev, y_curr, cb, "decode_conventional");
    return decode_product(y_curr.adjoint() * y_prev, cb);
}

DecodeResult decode_proposed(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const CorrelationMatrix& cm,
                             const Codebook& cb) {
    check_pair(y_prev, y_curr, cb, "decode_proposed");
    if (cm.c.rows() != y_prev.rows()) throw DimensionError("decode_proposed: C does not match N_R");
    return decode_product(y_curr.adjoint() * (cm.c * y_prev), cb);
}

DecodeResult decode_sliced(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, int lag, const Codebook& cb) {
    check_pair(y_prev, y_curr, cb, "decode_sliced");
    const Eigen::Index n_rx = y_prev.rows();
    if (lag < 0 || lag >= n_rx) throw DimensionError("decode_sliced: lag must lie in [0, N_R)");
    const Eigen::Index rows = n_rx - lag;
    return decode_product(y_curr.topRows(rows).adjoint() * y_prev.bottomRows(rows), cb);
}

ComplexMatrix mmse_estimate(const ComplexMatrix& y_curr, const CorrelationMatrix& cm, const SystemConfig& cfg) {
    const double pn = cfg.tx_power * cfg.n_tx;
    const double gain = std::sqrt(cfg.tx_power) * cfg.n_tx / (pn + cfg.noise_var);
    return gain * matmul(cm.c.adjoint(), y_curr);
}

double metric_quadratic(const ComplexMatrix& y_prev, const ComplexMatrix& y_curr, const CorrelationMatrix& cm,
                        const ComplexMatrix& x_i, const ComplexMatrix& g) {
    if (y_prev.rows() != y_curr.rows() || y_prev.cols() != y_curr.cols() || x_i.cols() != y_prev.cols() ||
        g.rows() != x_i.cols() || g.cols() != x_i.cols()) {
        throw DimensionError("metric_quadratic: inconsistent shapes");
    }
    ComplexMatrix xbar(x_i.rows(), 2 * x_i.cols());
    xbar << x_i, x_i * g;
    ComplexMatrix ybar(y_prev.rows(), 2 * y_prev.cols());
    ybar << matmul(cm.c, y_prev), y_curr;
    const ComplexMatrix z = ybar * xbar.adjoint();
    return z.squaredNorm();  // Tr{Z Z^H}
}

ComplexMatrix residual_covariance(const CorrelationMatrix& cm, const SystemConfig& cfg) {
    const Eigen::Index n = cm.c.rows();
    const ComplexMatrix ccH = cm.c * cm.c.adjoint();
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    return cfg.noise_var * ccH + cfg.n_tx * cfg.tx_power * (eye - ccH) + cfg.noise_var * eye;
}

}  // namespace dstm
