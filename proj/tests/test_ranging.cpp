#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "isac/acf.hpp"
#include "isac/ranging.hpp"
#include "isac/rng.hpp"

using namespace isac;

namespace {

RangingScenario two_target_scenario(const std::string& scheme,
                                    const Constellation& c, bool cp) {
    RangingScenario sc;
    sc.targets = {{11.25, 1.0}, {18.75, 0.1}};
    sc.basis = parse_basis(scheme, sc.n);
    sc.constellation = c;
    sc.cp = cp;
    return sc;
}

} // namespace

TEST_CASE("range bin mapping") {
    CHECK(range_to_bin(11.25, 800e6) == 60);
    CHECK(range_to_bin(18.75, 800e6) == 100);
    CHECK(range_to_bin(0.0, 1e9) == 0);
    CHECK(range_bin_m(800e6) == doctest::Approx(0.18737).epsilon(1e-4));
    CHECK(bin_to_range(60, 800e6) == doctest::Approx(11.2422).epsilon(1e-4));
    CHECK_THROWS_AS(range_to_bin(-1.0, 800e6), std::invalid_argument);
}

TEST_CASE("noiseless echo construction") {
    const int n = 128;
    RangingScenario sc = two_target_scenario("ofdm", make_psk(4), true);
    Eigen::VectorXcd x = sc.basis.u * sample_symbols(sc.constellation, n, std::uint64_t{1});

    // single target at bin 0 with power 1 reproduces x
    RangingScenario one = sc;
    one.targets = {{0.0, 1.0}};
    CHECK((noiseless_echo(x, one) - x).cwiseAbs().maxCoeff() <= 1e-15);

    // single target at bin 60 is a cyclic shift in CP mode
    one.targets = {{11.25, 1.0}};
    Eigen::VectorXcd y = noiseless_echo(x, one);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(y[(i + 60) % n] - x[i]) <= 1e-15);

    // CP-free mode zero-pads to n + max_bin
    one.cp = false;
    Eigen::VectorXcd ylin = noiseless_echo(x, one);
    CHECK(ylin.size() == n + 60);
    for (int i = 0; i < 60; ++i) CHECK(std::abs(ylin[i]) == 0.0);
    for (int i = 0; i < n; ++i) CHECK(std::abs(ylin[i + 60] - x[i]) <= 1e-15);

    // with CP, delays beyond the block are rejected
    RangingScenario bad = sc;
    bad.targets = {{30.0, 1.0}}; // bin 160 >= n
    CHECK_THROWS_AS(noiseless_echo(x, bad), std::invalid_argument);
    bad.cp = false;
    CHECK_NOTHROW(noiseless_echo(x, bad));
}

TEST_CASE("matched filter peaks") {
    const int n = 128;
    UnitaryBasis b = basis_ofdm(n);
    Eigen::VectorXcd x = b.u * sample_symbols(make_psk(4), n, std::uint64_t{2});

    Eigen::VectorXd self = matched_filter(x, x, true);
    CHECK(self[0] == doctest::Approx(std::pow(x.squaredNorm(), 2)).epsilon(1e-12));
    // ties the simulator to the correlation engine
    CHECK(self[0] == doctest::Approx(std::norm(periodic_acf(x)[0])).epsilon(1e-12));

    RangingScenario sc = two_target_scenario("ofdm", make_psk(4), true);
    Eigen::VectorXcd y = noiseless_echo(x, sc);
    Eigen::VectorXd prof = matched_filter(y, x, true);
    int argmax = 0;
    prof.maxCoeff(&argmax);
    CHECK(argmax == 60);
    // 10 dB level difference between the two target peaks
    CHECK(10.0 * std::log10(prof[60] / prof[100]) == doctest::Approx(10.0).epsilon(1e-9));
    // OFDM x PSK: impulse P-ACF leaves every off-target bin at numerical zero
    for (int k = 0; k < n; ++k)
        if (k != 60 && k != 100) CHECK(prof[k] <= 1e-18 * prof[60]);

    CHECK_THROWS_AS(matched_filter(y.head(n - 1), x, true), std::invalid_argument);
}

TEST_CASE("greedy range estimation") {
    Eigen::VectorXd prof = Eigen::VectorXd::Zero(128);
    prof[60] = 1.0;
    auto est1 = estimate_ranges(prof, 1, 3, 800e6);
    REQUIRE(est1.size() == 1);
    CHECK(est1[0] == doctest::Approx(11.2422).epsilon(1e-4));

    prof[100] = 0.1;
    auto est2 = estimate_ranges(prof, 2, 3, 800e6);
    REQUIRE(est2.size() == 2);
    CHECK(range_to_bin(est2[0], 800e6) == 60);
    CHECK(range_to_bin(est2[1], 800e6) == 100);

    // suppression prevents picking the shoulder of the first peak
    Eigen::VectorXd shoulder = Eigen::VectorXd::Zero(128);
    shoulder[60] = 1.0;
    shoulder[61] = 0.9;
    shoulder[100] = 0.5;
    auto est3 = estimate_ranges(shoulder, 2, 3, 800e6);
    CHECK(range_to_bin(est3[1], 800e6) == 100);

    // flat profile yields fewer peaks than targets
    Eigen::VectorXd flat = Eigen::VectorXd::Zero(16);
    flat[4] = 1.0;
    CHECK(estimate_ranges(flat, 3, 3, 800e6).size() < 3);
    CHECK_THROWS_AS(estimate_ranges(flat, 0, 3, 800e6), std::invalid_argument);
}

TEST_CASE("noise generation is deterministic and paired") {
    Eigen::VectorXcd z1 = unit_noise(64, 5);
    Eigen::VectorXcd z2 = unit_noise(64, 5);
    CHECK((z1 - z2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((unit_noise(64, 6) - z1).cwiseAbs().maxCoeff() > 0.0);

    RangingScenario sc = two_target_scenario("sc", make_psk(4), true);
    Eigen::VectorXcd x = sc.basis.u * sample_symbols(sc.constellation, sc.n, std::uint64_t{3});
    CHECK((synthesize_echo(x, sc, 7, 0.0) - noiseless_echo(x, sc)).cwiseAbs().maxCoeff() ==
          0.0);
    Eigen::VectorXcd ya = synthesize_echo(x, sc, 7, 0.25);
    Eigen::VectorXcd yb = synthesize_echo(x, sc, 7, 1.0);
    // same unit noise, different scale: paired across SNR points
    CHECK(((yb - noiseless_echo(x, sc)) - 2.0 * (ya - noiseless_echo(x, sc)))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("rmse sweep") {
    RangingScenario sc = two_target_scenario("ofdm", make_psk(4), true);
    sc.snr_db = {30.0};
    sc.trials = 100;
    sc.seed = 11;
    auto rows = rmse_sweep(sc);
    REQUIRE(rows.size() == 2);
    // noiseless-limit peak exactness: both targets within one range bin
    for (const auto& r : rows) {
        CHECK(r.rmse_m <= range_bin_m(sc.bandwidth_hz));
        CHECK(r.trials == 100);
    }
    auto rows2 = rmse_sweep(sc);
    CHECK(rows2[0].rmse_m == rows[0].rmse_m); // deterministic per seed
    CHECK(rows2[1].rmse_m == rows[1].rmse_m);

    sc.trials = 0;
    CHECK_THROWS_AS(rmse_sweep(sc), std::invalid_argument);
    sc.trials = 10;
    sc.targets.clear();
    CHECK_THROWS_AS(rmse_sweep(sc), std::invalid_argument);
}
