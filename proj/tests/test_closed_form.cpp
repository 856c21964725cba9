#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "isac/acf.hpp"
#include "isac/closed_form.hpp"
#include "isac/rng.hpp"

using namespace isac;

namespace {

// double-sum oracle: b_k[p] = sum_q |v_pq|^2 e^{-j 2 pi k q / n} with
// the magnitudes recomputed entry by entry
Eigen::VectorXcd b_oracle(const UnitaryBasis& basis, int k) {
    const int n = basis.n;
    Eigen::MatrixXcd v = basis.u.adjoint() * dft_matrix(n).adjoint();
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            b[p] += std::norm(v(p, q)) *
                    std::polar(1.0, -2.0 * std::numbers::pi * k * q / n);
    return b;
}

} // namespace

TEST_CASE("l4 norm and half dft") {
    Eigen::MatrixXcd m(2, 2);
    m << cdouble(1, 1), cdouble(0, 2), cdouble(-1, 0), cdouble(0, 0);
    CHECK(l4_norm_4(m) == doctest::Approx(4.0 + 16.0 + 1.0).epsilon(1e-14));

    const int n = 8;
    Eigen::MatrixXcd h = half_dft_2n(n);
    CHECK(h.rows() == 2 * n);
    CHECK(h.cols() == n);
    CHECK((h - dft_matrix(2 * n).leftCols(n)).cwiseAbs().maxCoeff() == 0.0);
    // columns remain orthonormal
    CHECK((h.adjoint() * h - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <=
          1e-13);
}

TEST_CASE("b vector against double-sum oracle") {
    auto rng = make_rng(17);
    for (const auto& b : {basis_sc(16), basis_ofdm(16), basis_cdma(16),
                          basis_otfs(4, 4), basis_afdm(16, 1.0 / 32.0, 0.01),
                          haar_unitary(16, rng)}) {
        for (int k = 0; k < 16; ++k) {
            Eigen::VectorXcd got = b_vector(b, k);
            CHECK((got - b_oracle(b, k)).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(got.squaredNorm() <= 16.0 + 1e-8); // Theorem 1 bound
        }
        CHECK(b_vector(b, 0).squaredNorm() == doctest::Approx(16.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(b_vector(basis_sc(16), 16), std::invalid_argument);
}

TEST_CASE("periodic closed form for the canonical bases") {
    const int n = 128;
    const double mu4 = 1.32;
    ClosedFormReport ofdm = expected_pacf(basis_ofdm(n), mu4);
    for (int k = 1; k < n; ++k)
        CHECK(ofdm.per_lag[k] == doctest::Approx((mu4 - 1.0) * n).epsilon(1e-12));
    CHECK(ofdm.per_lag[0] == doctest::Approx(n * n + (mu4 - 1.0) * n).epsilon(1e-12));
    CHECK(ofdm.per_lag[1] == doctest::Approx(40.96).epsilon(1e-12));

    ClosedFormReport sc = expected_pacf(basis_sc(n), mu4);
    for (int k = 1; k < n; ++k)
        CHECK(sc.per_lag[k] == doctest::Approx(n).epsilon(1e-12));
    CHECK(eisl_pacf(basis_sc(n), mu4) ==
          doctest::Approx(n * (n - 1.0)).epsilon(1e-12));
    // SC periodic EISL is constellation independent
    for (double m4 : {1.0, 1.381, 3.9867})
        CHECK(eisl_pacf(basis_sc(n), m4) == doctest::Approx(n * (n - 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(expected_pacf(basis_sc(n), 0.5), std::invalid_argument);
}

TEST_CASE("per-lag sums equal the eisl formulas") {
    auto rng = make_rng(23);
    for (int n : {16, 64}) {
        for (const auto& b :
             {basis_sc(n), basis_ofdm(n), basis_cdma(n), basis_otfs(n / 4, 4),
              basis_afdm(n, 1.0 / (2.0 * n), 0.01), haar_unitary(n, rng)}) {
            for (double mu4 : {1.0, 1.32, 2.0, 3.9867}) {
                CAPTURE(b.scheme);
                ClosedFormReport p = expected_pacf(b, mu4);
                CHECK(p.per_lag.tail(n - 1).sum() ==
                      doctest::Approx(p.eisl).epsilon(1e-10));
                CHECK(p.eisl == doctest::Approx(eisl_pacf(b, mu4)).epsilon(1e-12));
                ClosedFormReport a = expected_aacf(b, mu4);
                CHECK(a.per_lag.tail(n - 1).sum() ==
                      doctest::Approx(a.eisl).epsilon(1e-10));
                CHECK(a.eisl == doctest::Approx(eisl_aacf(b, mu4)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("aperiodic closed form analytic values") {
    for (int n : {16, 128}) {
        ClosedFormReport sc = expected_aacf(basis_sc(n), 1.32);
        for (int k = 1; k < n; ++k)
            CHECK(sc.per_lag[k] == doctest::Approx(n - k).epsilon(1e-12));
        CHECK(eisl_aacf(basis_sc(n), 1.32) ==
              doctest::Approx(n * (n - 1.0) / 2.0).epsilon(1e-10));

        ClosedFormReport ofdm = expected_aacf(basis_ofdm(n), 1.0);
        for (int k = 1; k < n; ++k)
            CHECK(ofdm.per_lag[k] ==
                  doctest::Approx(static_cast<double>(k) * (n - k) / n).epsilon(1e-9));
        CHECK(eisl_aacf(basis_ofdm(n), 1.0) ==
              doctest::Approx((n * n - 1.0) / 6.0).epsilon(1e-10));
        // ||F~_2n I||_4^4 = 1/2 makes the SC A-ACF EISL constellation independent
        CHECK(l4_norm_4(half_dft_2n(n)) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo agreement at small n for the structured bases") {
    const int n = 16;
    const long trials = 3000;
    Constellation c = make_qam(16);
    double mu4 = kurtosis(c);
    int idx = 0;
    for (const auto& b : {basis_otfs(4, 4), basis_afdm(n, 1.0 / 32.0, 0.01),
                          basis_generalized_ofdm_random(n, 2), basis_cdma(n)}) {
        CAPTURE(b.scheme);
        for (AcfMode mode : {AcfMode::periodic, AcfMode::aperiodic}) {
            AcfProfile mc = monte_carlo_profile(b, c, mode, trials, 40 + idx);
            ClosedFormReport cf = (mode == AcfMode::periodic) ? expected_pacf(b, mu4)
                                                              : expected_aacf(b, mu4);
            int ok = 0;
            for (int k = 0; k < n; ++k)
                if (std::abs(mc.mean_sq[k] - cf.per_lag[k]) <=
                    4.0 * mc.std_err[k] + 1e-9 * cf.per_lag[0])
                    ++ok;
            CHECK(ok >= n - 1);
        }
        ++idx;
    }
}

TEST_CASE("gaussian symbols erase the basis dependence") {
    // complex Gaussian has mu4 = 2: every unitary basis yields the flat
    // per-lag level n in both the closed form and simulation
    const int n = 16;
    const long trials = 4000;
    for (const auto& b : {basis_sc(n), basis_ofdm(n), basis_cdma(n)}) {
        ClosedFormReport cf = expected_pacf(b, 2.0);
        for (int k = 1; k < n; ++k)
            CHECK(cf.per_lag[k] == doctest::Approx(n).epsilon(1e-10));

        auto rng = make_rng(77);
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
        for (long t = 0; t < trials; ++t) {
            Eigen::VectorXcd s(n);
            for (int i = 0; i < n; ++i) s[i] = cdouble(gauss(rng), gauss(rng));
            Eigen::VectorXcd r = periodic_acf(b.u * s);
            for (int k = 0; k < n; ++k) {
                double v = std::norm(r[k]);
                sum[k] += v;
                sum_sq[k] += v * v;
            }
        }
        int ok = 0;
        for (int k = 1; k < n; ++k) {
            double mean = sum[k] / trials;
            double var = (sum_sq[k] - trials * mean * mean) / (trials - 1.0);
            if (std::abs(mean - n) <= 4.0 * std::sqrt(var / trials)) ++ok;
        }
        CHECK(ok >= n - 2);
    }
}

TEST_CASE("doppler profile ties single carrier to ofdm") {
    const int n = 32;
    const double mu4 = 1.381;
    ClosedFormReport sc_dop = expected_doppler(basis_sc(n), mu4);
    ClosedFormReport ofdm_pacf = expected_pacf(basis_ofdm(n), mu4);
    CHECK((sc_dop.per_lag - ofdm_pacf.per_lag).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(sc_dop.mode == AcfMode::doppler_periodic);

    AcfProfile p = to_profile(ofdm_pacf);
    CHECK(p.source == "closed_form");
    CHECK(p.trials == 0);
    CHECK((p.mean_sq - ofdm_pacf.per_lag).cwiseAbs().maxCoeff() == 0.0);
}
