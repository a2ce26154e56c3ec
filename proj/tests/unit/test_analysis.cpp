// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <random>

#include "dstm/analysis.hpp"
#include "support/oracles.hpp"

using namespace dstm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

oracle::Mat to_oracle(const ComplexMatrix& m) {
    oracle::Mat o = oracle::zeros(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) o[i][j] = oracle::cld(m(i, j));
    return o;
}

ComplexMatrix stacked(const ComplexMatrix& x, const ComplexMatrix& g) {
    ComplexMatrix out(x.rows(), 2 * x.cols());
    out << x, x * g;
    return out;
}

SystemConfig snr_config(double snr_db) {
    SystemConfig cfg;
    cfg.set_snr_db(snr_db);
    return cfg;
}

}  // namespace

TEST_CASE("sinr_gamma special values") {
    const SystemConfig cfg;
    const CorrelationSpec perfect{CorrelationCase::CaseII, 0, 1.0, 0.0};
    CHECK_THAT(sinr_gamma(perfect, 4, 4, 1.0, cfg.noise_var), WithinRel(4.0 / cfg.noise_var, 1e-14));
    CHECK(sinr_gamma(CorrelationSpec{}, 4, 4, 1.0, cfg.noise_var) == 0.0);
    const CorrelationSpec s{CorrelationCase::CaseI, 0, 0.641, 0.290};
    CHECK_THAT(sinr_gamma(s, 4, 4, 1.0, cfg.noise_var),
               WithinRel(oracle::sinr_power_ratio(0, 0.641, 0.290, 4, 4, 1.0, cfg.noise_var), 1e-12));
}

TEST_CASE("sinr_gamma equals the expected-power ratio on random draws") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> rho(-1.0, 1.0), snr(-5.0, 40.0), power(0.2, 3.0);
    std::uniform_int_distribution<int> nr(1, 8), nt(1, 8);
    for (int i = 0; i < 200; ++i) {
        const int n_rx = nr(gen);
        std::uniform_int_distribution<int> lagd(0, n_rx - 1);
        const int lag = lagd(gen);
        const CorrelationSpec s = psd_safeguard(CorrelationSpec{CorrelationCase::CaseI, lag, rho(gen), rho(gen)});
        const int n_tx = nt(gen);
        const double p = power(gen);
        const double sigma2 = n_tx * p / std::pow(10.0, snr(gen) / 10.0);
        const double got = sinr_gamma(s, n_rx, n_tx, p, sigma2);
        const double ref = oracle::sinr_power_ratio(lag, s.rho_l, s.rho_l1, n_rx, n_tx, p, sigma2);
        CHECK_THAT(got, WithinRel(ref, 1e-10));
    }
}

TEST_CASE("general bound trivial limits") {
    const Codebook cb = default_codebook();
    const SystemConfig cfg;
    PepInputs same = make_pep_inputs(cb, 1, 1, CorrelationSpec{CorrelationCase::CaseII, 0, 0.9, 0.0}, cfg);
    CHECK_THAT(pep_bound_general(same).linear, WithinAbs(1.0, 1e-12));
    PepInputs blind = make_pep_inputs(cb, 0, 1, CorrelationSpec{}, cfg);
    CHECK(pep_bound_general(blind).linear == 1.0);
}

TEST_CASE("general bound at perfect correlation equals the unitary Chernoff bound") {
    const Codebook cb = default_codebook();
    for (double snr : {0.0, 5.0, 15.0, 30.0}) {
        const SystemConfig cfg = snr_config(snr);
        const CorrelationSpec perfect{CorrelationCase::CaseII, 0, 1.0, 0.0};
        const double rho = cfg.n_tx * cfg.tx_power / cfg.noise_var;
        for (int k = 0; k < 4; ++k)
            for (int m = 0; m < 4; ++m) {
                if (k == m) continue;
                const BoundValue b = pep_bound_general(make_pep_inputs(cb, k, m, perfect, cfg));
                const ComplexMatrix cg = stacked(cb.initial, cb.generators[k]);
                const ComplexMatrix cgp = stacked(cb.initial, cb.generators[m]);
                const double ref = oracle::chernoff(to_oracle(cg), to_oracle(cgp), 8, 4, 4, rho);
                CHECK_THAT(b.linear, WithinRel(ref, 1e-9));
                CHECK_THAT(pep_chernoff_baseline(cg, cgp, 8, 4, 4, rho).linear, WithinRel(ref, 1e-9));
            }
    }
}

TEST_CASE("general bound equals the baseline with the effective SINR and antenna count") {
    const Codebook cb = default_codebook();
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> rho(-0.9, 0.9);
    std::uniform_int_distribution<int> lagd(0, 3);
    const SystemConfig cfg = snr_config(10.0);
    for (int i = 0; i < 50; ++i) {
        const int lag = lagd(gen);
        const CorrelationSpec s = psd_safeguard(CorrelationSpec{CorrelationCase::CaseI, lag, rho(gen), rho(gen)}, 4);
        // scaled-unitary X_i: Hadamard times a random diagonal phase
        ComplexMatrix phase = ComplexMatrix::Zero(4, 4);
        for (int d = 0; d < 4; ++d) phase(d, d) = std::polar(1.0, rho(gen) * 3.0);
        const ComplexMatrix x = cb.initial * phase;
        PepInputs inp = make_pep_inputs(cb, 1, 3, s, cfg);
        inp.initial = x;
        const double gamma = sinr_gamma(s, 4, 4, 1.0, cfg.noise_var);
        const double got = pep_bound_general(inp).linear;
        const double ref = pep_chernoff_baseline(stacked(x, inp.g), stacked(x, inp.g_prime), 8, 4, 4 - lag, gamma).linear;
        CHECK_THAT(got, WithinRel(ref, 1e-9));
    }
}

TEST_CASE("Chernoff baseline limits and similarity invariance") {
    const Codebook cb = default_codebook();
    const ComplexMatrix cg = stacked(cb.initial, cb.generators[1]);
    const ComplexMatrix cgp = stacked(cb.initial, cb.generators[2]);
    CHECK_THAT(pep_chernoff_baseline(cg, cg, 8, 4, 4, 10.0).linear, WithinAbs(1.0, 1e-12));
    CHECK(pep_chernoff_baseline(cg, cgp, 8, 4, 4, 0.0).linear == 1.0);
    const ComplexMatrix u = make_hadamard_initial(4) * ComplexMatrix(Eigen::Vector4cd(1, Complex(0, 1), -1, 1).asDiagonal()) / 2.0;
    const double a = pep_chernoff_baseline(cg, cgp, 8, 4, 4, 6.0).linear;
    const double b = pep_chernoff_baseline(u * cg, u * cgp, 8, 4, 4, 6.0).linear;
    CHECK_THAT(b, WithinRel(a, 1e-10));
    CHECK_THROWS_AS(pep_chernoff_baseline(cg, cgp, 4, 4, 4, 6.0), DimensionError);
}

TEST_CASE("gamma_pair") {
    const double sigma2 = 0.4;
    const auto [g1, g2] = gamma_pair(CorrelationSpec{CorrelationCase::CaseII, 1, 0.9, 0.0}, 4, 1.0, sigma2);
    CHECK_THAT(g1, WithinRel(10.0, 1e-14));
    CHECK_THAT(g2, WithinRel(0.81 / 0.29, 1e-12));
    CHECK_THAT(g2, WithinAbs(2.793, 1e-3));
    CHECK(gamma_pair(CorrelationSpec{CorrelationCase::CaseII, 0, 1.0, 0.0}, 4, 1.0, sigma2).second == 10.0);
    CHECK(gamma_pair(CorrelationSpec{CorrelationCase::CaseII, 0, 0.0, 0.0}, 4, 1.0, sigma2).second == 0.0);
    CHECK_THROWS(gamma_pair(CorrelationSpec{CorrelationCase::CaseI, 0, 0.5, 0.5}, 4, 1.0, sigma2));
}

TEST_CASE("special bound and floor") {
    const Codebook cb = default_codebook();
    const CorrelationSpec s{CorrelationCase::CaseII, 1, 0.95, 0.0};
    CHECK_THAT(pep_bound_special(make_pep_inputs(cb, 2, 2, s, snr_config(10))).linear, WithinAbs(1.0, 1e-14));
    CHECK(pep_bound_special(make_pep_inputs(cb, 0, 2, CorrelationSpec{CorrelationCase::CaseII, 1, 0.0, 0.0},
                                            snr_config(10)))
              .linear == 1.0);
    const double floor = pep_floor(make_pep_inputs(cb, 0, 1, s, snr_config(10))).linear;
    CHECK_THAT(pep_bound_special(make_pep_inputs(cb, 0, 1, s, snr_config(60))).linear, WithinRel(floor, 1e-2));
    CHECK_THAT(pep_bound_special(make_pep_inputs(cb, 0, 1, s, snr_config(80))).linear, WithinRel(floor, 1e-3));
    CHECK(pep_floor(make_pep_inputs(cb, 0, 1, CorrelationSpec{CorrelationCase::CaseII, 1, 0.0, 0.0}, snr_config(0)))
              .linear == 1.0);
    const BoundValue none = pep_floor(make_pep_inputs(cb, 0, 1, CorrelationSpec{CorrelationCase::CaseII, 0, 1.0, 0.0},
                                                      snr_config(0)));
    CHECK(none.linear == 0.0);
}

TEST_CASE("floor decreases with correlation strength") {
    const Codebook cb = default_codebook();
    double prev = 1.0;
    for (int i = 1; i <= 9; ++i) {
        const CorrelationSpec s{CorrelationCase::CaseII, 0, 0.1 * i, 0.0};
        const double f = pep_floor(make_pep_inputs(cb, 0, 1, s, SystemConfig{})).linear;
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("general bound is non-increasing in SINR and stays in (0, 1]") {
    const Codebook cb = default_codebook();
    const CorrelationSpec s = psd_safeguard(CorrelationSpec{CorrelationCase::CaseI, 0, 0.64, 0.29}, 4);
    double prev = 1.0;
    for (double snr = -10.0; snr <= 40.0; snr += 2.0) {
        const double b = pep_bound_general(make_pep_inputs(cb, 0, 1, s, snr_config(snr))).linear;
        CHECK(b > 0.0);
        CHECK(b <= 1.0);
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
}

TEST_CASE("determinant argument is Hermitian with a real determinant") {
    const Codebook cb = default_codebook();
    const CorrelationSpec s = psd_safeguard(CorrelationSpec{CorrelationCase::CaseI, 1, 0.5, 0.4}, 4);
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m) {
            const ComplexMatrix a = pep_general_argument(make_pep_inputs(cb, k, m, s, SystemConfig{}));
            CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
            const Complex d = det_complex(a);
            CHECK(std::abs(d.imag()) < 1e-10 * std::abs(d));
        }
}

TEST_CASE("worst pair bound dispatches on the case") {
    const Codebook cb = default_codebook();
    const SystemConfig cfg;
    CHECK(worst_pair_bound(cb, CorrelationSpec{}, cfg).linear == 1.0);
    const CorrelationSpec two = psd_safeguard(CorrelationSpec{CorrelationCase::CaseI, 0, 0.6, 0.3}, 4);
    const CorrelationSpec one{CorrelationCase::CaseII, 1, 0.9, 0.0};
    CHECK(worst_pair_bound(cb, two, cfg).log10 == worst_pair_bound(cb, two, cfg, BoundKind::General).log10);
    CHECK(worst_pair_bound(cb, one, cfg).log10 == worst_pair_bound(cb, one, cfg, BoundKind::Special).log10);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m)
            if (k != m) worst = std::max(worst, pep_bound_special(make_pep_inputs(cb, k, m, one, cfg)).linear);
    CHECK_THAT(worst_pair_bound(cb, one, cfg).linear, WithinRel(worst, 1e-12));
}
