#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "isac/closed_form.hpp"
#include "isac/optimality.hpp"
#include "isac/rng.hpp"

using namespace isac;

TEST_CASE("complex permutation detection") {
    const int n = 6;
    CHECK(is_complex_permutation(Eigen::MatrixXcd::Identity(n, n)));
    CHECK(is_complex_permutation(reversal_permutation(n).cast<cdouble>()));

    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        p((j + 2) % n, j) = std::polar(1.0, 0.7 * j); // permutation x diagonal unitary
    CHECK(is_complex_permutation(p));

    CHECK_FALSE(is_complex_permutation(dft_matrix(n)));
    CHECK_FALSE(is_complex_permutation(basis_cdma(8).u));
    Eigen::MatrixXcd nearly = Eigen::MatrixXcd::Identity(n, n);
    nearly(0, 1) = 1e-3;
    CHECK_FALSE(is_complex_permutation(nearly));
    CHECK_FALSE(is_complex_permutation(Eigen::MatrixXcd::Zero(n, n)));
}

TEST_CASE("double dft is the index reversal") {
    for (int n : {2, 5, 16, 128}) CHECK(verify_ff_reversal(n) <= 1e-12);
    Eigen::MatrixXd r = reversal_permutation(4);
    CHECK(r(0, 0) == 1.0);
    CHECK(r(1, 3) == 1.0);
    CHECK(r(2, 2) == 1.0);
    CHECK(r(3, 1) == 1.0);
}

TEST_CASE("unitary exponential and random directions") {
    auto rng = make_rng(5);
    const int n = 8;
    Eigen::MatrixXcd h = random_hermitian(n, rng);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(h.norm() == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd u0 = unitary_exp(h, 0.0);
    CHECK((u0 - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-13);
    Eigen::MatrixXcd u = unitary_exp(h, 0.37);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <=
          1e-12);
    // first-order series agreement for small t
    double t = 1e-6;
    Eigen::MatrixXcd series =
        Eigen::MatrixXcd::Identity(n, n) + cdouble(0.0, t) * h;
    CHECK((unitary_exp(h, t) - series).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("objective value at the stationary point") {
    for (int n : {4, 8, 16}) {
        double f0 = aacf_objective(Eigen::MatrixXcd::Identity(n, n));
        CHECK(f0 == doctest::Approx((2.0 * n * n + 1.0) / (6.0 * n)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(aacf_objective(2.0 * Eigen::MatrixXcd::Identity(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("geodesic stationarity at the identity") {
    auto rng = make_rng(13);
    const int n = 8;
    for (int d = 0; d < 5; ++d) {
        Eigen::MatrixXcd h = random_hermitian(n, rng);
        GeodesicCheck g = geodesic_derivatives(h, 1e-3);
        CHECK(std::abs(g.first_derivative) <= 1e-6 * g.f0);
        CHECK(g.second_derivative <= 1e-8 * g.f0);
    }
    Eigen::MatrixXcd notherm = Eigen::MatrixXcd::Random(n, n);
    notherm(0, 1) += cdouble(0.0, 1.0);
    CHECK_THROWS_AS(geodesic_derivatives(notherm, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(geodesic_derivatives(random_hermitian(n, rng), 0.0),
                    std::invalid_argument);
}

TEST_CASE("summary pass and control point") {
    OptimalitySummary s = verify_local_optimality(8, 25, 1);
    CHECK(s.pass);
    CHECK(s.directions == 25);
    CHECK(s.f0 == doctest::Approx((2.0 * 64.0 + 1.0) / 48.0).epsilon(1e-10));

    auto rng = make_rng(99);
    Eigen::MatrixXcd v0 = haar_unitary(8, rng).u;
    CHECK(count_nonstationary_directions(v0, 25, 2) >= 24);
    // determinism
    OptimalitySummary s2 = verify_local_optimality(8, 25, 1);
    CHECK(s2.max_abs_first == s.max_abs_first);
    CHECK(s2.max_second == s.max_second);
}

TEST_CASE("neighborhood scan keeps ofdm on top") {
    ScanSummary s = eisl_neighborhood_scan(16, 0.1, 40, 3);
    CHECK(s.ofdm_attains_min);
    CHECK(s.ofdm_eisl == doctest::Approx((16.0 * 16.0 - 1.0) / 6.0).epsilon(1e-10));
    CHECK(s.min_sampled_eisl >= s.ofdm_eisl - 1e-9 * s.ofdm_eisl);
    CHECK_THROWS_AS(eisl_neighborhood_scan(16, 0.0, 10, 1), std::invalid_argument);
}

TEST_CASE("doppler duality smoke test") {
    DualityReport r = doppler_duality_check(32, make_qam(16), 400, 6);
    CHECK(r.match_fraction >= 0.9);
    CHECK(r.sc_lowest);
    CHECK_THROWS_AS(doppler_duality_check(32, make_qam(16), 50, 6),
                    std::invalid_argument);
}
