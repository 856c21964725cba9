#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "isac/acf.hpp"
#include "isac/basis.hpp"
#include "isac/constellation.hpp"

namespace isac {

// True iff exactly one entry per row and column has modulus within tol of 1
// and every other entry has modulus <= tol.
bool is_complex_permutation(const Eigen::MatrixXcd& m, double tol = 1e-9);

// Max-abs residual between F_n^H F_n^H and the index-reversal permutation
// (row 0 fixed, rows 1..n-1 reversed).
double verify_ff_reversal(int n);

Eigen::MatrixXd reversal_permutation(int n);

// l4 objective of the CP-free EISL analysis: f(V) = ||F~_{2N} F_N^H V^H||_4^4.
double aacf_objective(const Eigen::MatrixXcd& v);

// exp(j t H) for Hermitian H, via unitary eigendecomposition.
Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double t);

// Random Hermitian direction with unit Frobenius norm.
Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng);

struct GeodesicCheck {
    int n = 0;
    double first_derivative = 0.0;  // Richardson-extrapolated central difference
    double second_derivative = 0.0;
    double step = 0.0;
    double f0 = 0.0;
};

// Central finite differences of t -> f(base * exp(j t h)) at t = 0,
// Richardson-extrapolated over steps {step, step/2}. base defaults to I.
GeodesicCheck geodesic_derivatives(const Eigen::MatrixXcd& h, double step,
                                   const Eigen::MatrixXcd* base = nullptr);

struct OptimalitySummary {
    int n = 0;
    int directions = 0;
    double max_abs_first = 0.0;
    double max_second = 0.0;
    double f0 = 0.0;
    bool pass = false;
};

// Stationarity + concavity of the l4 objective at V = I over random
// Hermitian geodesic directions.
OptimalitySummary verify_local_optimality(int n, int directions, std::uint64_t seed);

// Control experiment at an arbitrary unitary point; returns the number of
// directions whose first derivative exceeds 1e-6 * f(V0).
int count_nonstationary_directions(const Eigen::MatrixXcd& v0, int directions,
                                   std::uint64_t seed);

struct ScanSummary {
    int n = 0;
    int samples = 0;
    double scale = 0.0;
    double ofdm_eisl = 0.0;
    double min_sampled_eisl = 0.0;
    bool ofdm_attains_min = false;
};

// Samples exp(j eps H) F_n^H near the OFDM basis and evaluates the
// CP-free EISL at mu4 = 1.
ScanSummary eisl_neighborhood_scan(int n, double perturbation_scale, int samples,
                                   std::uint64_t seed);

struct DualityReport {
    int n = 0;
    long trials = 0;
    AcfProfile sc_doppler;            // empirical, SC basis
    Eigen::VectorXd ofdm_pacf;        // closed form, same constellation
    double match_fraction = 0.0;      // lags within 3x standard error
    bool sc_lowest = false;           // vs closed-form Doppler of OFDM/CDMA
};

DualityReport doppler_duality_check(int n, const Constellation& c, long trials,
                                    std::uint64_t seed);

} // namespace isac
