#include "isac/acf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

std::string to_string(AcfMode m) {
    switch (m) {
        case AcfMode::periodic: return "periodic";
        case AcfMode::aperiodic: return "aperiodic";
        default: return "doppler_periodic";
    }
}

AcfMode acf_mode_from_string(const std::string& s) {
    if (s == "periodic") return AcfMode::periodic;
    if (s == "aperiodic") return AcfMode::aperiodic;
    if (s == "doppler" || s == "doppler_periodic") return AcfMode::doppler_periodic;
    throw std::invalid_argument("malformed mode token: " + s);
}

Eigen::VectorXcd aperiodic_acf(const Eigen::VectorXcd& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    Eigen::VectorXcd r(n);
    for (int k = 0; k < n; ++k) {
        cdouble acc = 0.0;
        for (int i = 0; i + k < n; ++i) acc += std::conj(x[i]) * x[i + k];
        r[k] = acc;
    }
    return r;
}

Eigen::VectorXcd periodic_acf(const Eigen::VectorXcd& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    Eigen::VectorXcd r(n);
    for (int k = 0; k < n; ++k) {
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * x[(i + k) % n];
        r[k] = acc;
    }
    return r;
}

Eigen::VectorXcd doppler_slice(const Eigen::VectorXcd& x) {
    return periodic_acf(dft_matrix(static_cast<int>(x.size())) * x);
}

AcfProfile monte_carlo_profile(const UnitaryBasis& basis, const Constellation& c,
                               AcfMode mode, long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("invalid-order: trials must be >= 1");
    const int n = basis.n;
    // Doppler mode correlates the spectrum, i.e. uses the effective basis F U.
    Eigen::MatrixXcd m = (mode == AcfMode::doppler_periodic)
                             ? Eigen::MatrixXcd(dft_matrix(n) * basis.u)
                             : basis.u;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
    for (long t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        Eigen::VectorXcd x = m * sample_symbols(c, n, rng);
        Eigen::VectorXcd r =
            (mode == AcfMode::aperiodic) ? aperiodic_acf(x) : periodic_acf(x);
        for (int k = 0; k < n; ++k) {
            double v = std::norm(r[k]);
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    AcfProfile p;
    p.n = n;
    p.mode = mode;
    p.trials = trials;
    p.source = "empirical";
    p.mean_sq = sum / static_cast<double>(trials);
    p.std_err = Eigen::VectorXd::Zero(n);
    if (trials > 1) {
        for (int k = 0; k < n; ++k) {
            double var = (sum_sq[k] - trials * p.mean_sq[k] * p.mean_sq[k]) /
                         static_cast<double>(trials - 1);
            p.std_err[k] = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
        }
    }
    return p;
}

double eisl_empirical(const AcfProfile& p) {
    if (p.n < 2) throw std::invalid_argument("invalid-order: profile too short");
    return p.mean_sq.tail(p.n - 1).sum();
}

double pslr_db(const AcfProfile& p) {
    if (p.n < 2) throw std::invalid_argument("invalid-order: profile too short");
    double max_side = p.mean_sq.tail(p.n - 1).maxCoeff();
    if (max_side <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p.mean_sq[0] / max_side);
}

} // namespace isac
