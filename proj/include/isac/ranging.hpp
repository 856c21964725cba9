#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "isac/basis.hpp"
#include "isac/constellation.hpp"

namespace isac {

inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s

struct Target {
    double range_m = 0.0;
    double power = 1.0; // linear reflection power
};

struct RangingScenario {
    double bandwidth_hz = 800e6;
    int n = 128;
    std::vector<Target> targets;
    std::vector<double> snr_db;
    UnitaryBasis basis;
    Constellation constellation;
    bool cp = true;
    long trials = 1000;
    std::uint64_t seed = 0;
    int min_separation_bins = 3;
};

// Range bin Delta = c / (2 B); bin = round(2 R B / c).
int range_to_bin(double range_m, double bandwidth_hz);
double bin_to_range(int bin, double bandwidth_hz);
double range_bin_m(double bandwidth_hz);

// Noiseless echo. CP mode: length-n sum of cyclic shifts; CP-free mode:
// length n + max_bin with zero-padded linear delays.
Eigen::VectorXcd noiseless_echo(const Eigen::VectorXcd& x, const RangingScenario& sc);

// Unit-variance complex Gaussian noise, deterministic per trial seed.
Eigen::VectorXcd unit_noise(int len, std::uint64_t trial_seed);

// noiseless_echo + sqrt(noise_var) * unit_noise. noise_var = 1/rho with
// rho the linear SNR (transmit power fixed at 1).
Eigen::VectorXcd synthesize_echo(const Eigen::VectorXcd& x, const RangingScenario& sc,
                                 std::uint64_t trial_seed, double noise_var);

// |cross-correlation of y with x|^2 per lag. CP mode: cyclic lags 0..n-1;
// CP-free: linear lags 0..len(y)-n.
Eigen::VectorXd matched_filter(const Eigen::VectorXcd& y, const Eigen::VectorXcd& x,
                               bool cp);

// Greedy peak picking with +/- min_separation suppression; returns ranges (m).
std::vector<double> estimate_ranges(const Eigen::VectorXd& profile, int n_targets,
                                    int min_separation_bins, double bandwidth_hz);

struct RmseRow {
    double snr_db = 0.0;
    int target = 0;
    double rmse_m = 0.0;
    double mse = 0.0;
    double mse_std_err = 0.0;
    long trials = 0;
};

std::vector<RmseRow> rmse_sweep(const RangingScenario& sc);

} // namespace isac
