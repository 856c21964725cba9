#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isac {

using cdouble = std::complex<double>;

/// Finite complex alphabet with point probabilities. Always unit average
/// power and (unless flagged) zero mean and zero pseudo-variance.
struct Constellation {
    std::vector<cdouble> points;
    std::vector<double> probabilities;
    std::string label;
    // BPSK-like alphabets have E(s^2) != 0; they are usable for sampling
    // but excluded from the fourth-moment matrix construction.
    bool assumption2_violated = false;
};

enum class GaussianClass { sub_gaussian, gaussian_like, super_gaussian };

Constellation make_psk(int order);
Constellation make_qam(int order);
Constellation make_apsk(const std::vector<double>& radii,
                        const std::vector<int>& points_per_ring);

// Places an origin point with probability p0 and renormalizes power;
// the kurtosis becomes mu4 / (1 - p0).
Constellation apply_index_modulation(const Constellation& base, double p0);

double mean_abs(const Constellation& c);          // |E s|
double pseudo_variance_abs(const Constellation& c); // |E s^2|
double average_power(const Constellation& c);     // E |s|^2
double kurtosis(const Constellation& c);          // E |s|^4 for unit power
GaussianClass classify(const Constellation& c);
std::string to_string(GaussianClass g);

// Checks probability normalization, unit power, rotational symmetry and
// kurtosis >= 1; throws std::invalid_argument on violation.
void validate(const Constellation& c);

Eigen::VectorXcd sample_symbols(const Constellation& c, int count,
                                std::mt19937_64& rng);
Eigen::VectorXcd sample_symbols(const Constellation& c, int count,
                                std::uint64_t seed);

// n^2 x n^2 fourth-moment matrix E(vec(ss^H) vec(ss^H)^H): kurtosis on the
// (m,m,m,m) diagonal positions, 1 on matched-pair positions, 0 elsewhere.
Eigen::MatrixXd moment_matrix(const Constellation& c, int n);

// Spec strings: "psk:16", "qam:64",
// "apsk:r=4.54e-5,0.0067,0.0815,1.9983;n=16,16,16,16", "im:psk:4:p0=0.75".
Constellation parse_constellation(const std::string& spec);

} // namespace isac
