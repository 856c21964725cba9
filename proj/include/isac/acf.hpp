#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "isac/basis.hpp"
#include "isac/constellation.hpp"

namespace isac {

enum class AcfMode { periodic, aperiodic, doppler_periodic };

std::string to_string(AcfMode m);
AcfMode acf_mode_from_string(const std::string& s);

/// Per-lag averaged squared ACF, lags 0..n-1, linear scale.
struct AcfProfile {
    int n = 0;
    AcfMode mode = AcfMode::periodic;
    Eigen::VectorXd mean_sq;
    Eigen::VectorXd std_err; // per-lag Monte Carlo standard error (0 for closed form)
    long trials = 0;
    std::string source; // "empirical" or "closed_form"
};

// r[k] = sum_{i} conj(x_i) x_{i+k}, k = 0..n-1.
Eigen::VectorXcd aperiodic_acf(const Eigen::VectorXcd& x);

// r~[k] = sum_i conj(x_i) x_{(i+k) mod n}; satisfies r~[n-k] = conj(r~[k]).
Eigen::VectorXcd periodic_acf(const Eigen::VectorXcd& x);

// Periodic ACF of the frequency-domain signal F_n x (zero-delay Doppler slice).
Eigen::VectorXcd doppler_slice(const Eigen::VectorXcd& x);

AcfProfile monte_carlo_profile(const UnitaryBasis& basis, const Constellation& c,
                               AcfMode mode, long trials, std::uint64_t seed);

// Sum of mean_sq over lags 1..n-1 (one-sided for the aperiodic mode).
double eisl_empirical(const AcfProfile& p);

// 10 log10(mainlobe / max sidelobe); +inf when all sidelobes vanish.
double pslr_db(const AcfProfile& p);

} // namespace isac
