#include "isac/optimality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isac/closed_form.hpp"
#include "isac/rng.hpp"

namespace isac {

bool is_complex_permutation(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const int n = static_cast<int>(m.rows());
    std::vector<int> row_hits(n, 0), col_hits(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double a = std::abs(m(i, j));
            if (std::abs(a - 1.0) <= tol) {
                ++row_hits[i];
                ++col_hits[j];
            } else if (a > tol) {
                return false;
            }
        }
    for (int i = 0; i < n; ++i)
        if (row_hits[i] != 1 || col_hits[i] != 1) return false;
    return true;
}

Eigen::MatrixXd reversal_permutation(int n) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, (n - i) % n) = 1.0;
    return p;
}

double verify_ff_reversal(int n) {
    Eigen::MatrixXcd fh = dft_matrix(n).adjoint();
    return (fh * fh - reversal_permutation(n).cast<cdouble>()).cwiseAbs().maxCoeff();
}

double aacf_objective(const Eigen::MatrixXcd& v) {
    const int n = static_cast<int>(v.rows());
    if (v.cols() != n) throw std::invalid_argument("invalid-argument: not square");
    if ((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("invalid-argument: not unitary");
    return l4_norm_4(half_dft_2n(n) * dft_matrix(n).adjoint() * v.adjoint());
}

Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        phases[i] = std::polar(1.0, t * es.eigenvalues()[i]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            cdouble z(gauss(rng) / std::sqrt(2.0), gauss(rng) / std::sqrt(2.0));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h / h.norm();
}

GeodesicCheck geodesic_derivatives(const Eigen::MatrixXcd& h, double step,
                                   const Eigen::MatrixXcd* base) {
    const int n = static_cast<int>(h.rows());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("invalid-direction: not Hermitian");
    if (step <= 0.0) throw std::invalid_argument("invalid-direction: step must be > 0");

    Eigen::MatrixXcd a = half_dft_2n(n) * dft_matrix(n).adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    auto f_at = [&](double t) {
        Eigen::VectorXcd phases(n);
        for (int i = 0; i < n; ++i)
            phases[i] = std::polar(1.0, t * es.eigenvalues()[i]);
        Eigen::MatrixXcd v =
            es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        if (base) v = *base * v;
        return l4_norm_4(a * v.adjoint());
    };

    double f0 = f_at(0.0);
    auto first_diff = [&](double d) { return (f_at(d) - f_at(-d)) / (2.0 * d); };
    auto second_diff = [&](double d) {
        return (f_at(d) - 2.0 * f0 + f_at(-d)) / (d * d);
    };
    // Richardson over steps {step, step/2} removes the O(step^2) term
    double d1a = first_diff(step), d1b = first_diff(step / 2.0);
    double d2a = second_diff(step), d2b = second_diff(step / 2.0);

    GeodesicCheck g;
    g.n = n;
    g.step = step;
    g.f0 = f0;
    g.first_derivative = (4.0 * d1b - d1a) / 3.0;
    g.second_derivative = (4.0 * d2b - d2a) / 3.0;
    return g;
}

OptimalitySummary verify_local_optimality(int n, int directions, std::uint64_t seed) {
    if (directions < 1) throw std::invalid_argument("invalid-order: directions >= 1");
    OptimalitySummary s;
    s.n = n;
    s.directions = directions;
    s.max_second = -std::numeric_limits<double>::infinity();
    auto rng = make_rng(seed);
    for (int d = 0; d < directions; ++d) {
        Eigen::MatrixXcd h = random_hermitian(n, rng);
        GeodesicCheck g = geodesic_derivatives(h, 1e-3);
        s.f0 = g.f0;
        s.max_abs_first = std::max(s.max_abs_first, std::abs(g.first_derivative));
        s.max_second = std::max(s.max_second, g.second_derivative);
    }
    s.pass = s.max_abs_first <= 1e-6 * s.f0 && s.max_second <= 1e-8 * s.f0;
    return s;
}

int count_nonstationary_directions(const Eigen::MatrixXcd& v0, int directions,
                                   std::uint64_t seed) {
    const int n = static_cast<int>(v0.rows());
    auto rng = make_rng(seed);
    int nonzero = 0;
    for (int d = 0; d < directions; ++d) {
        Eigen::MatrixXcd h = random_hermitian(n, rng);
        GeodesicCheck g = geodesic_derivatives(h, 1e-3, &v0);
        if (std::abs(g.first_derivative) > 1e-6 * g.f0) ++nonzero;
    }
    return nonzero;
}

ScanSummary eisl_neighborhood_scan(int n, double perturbation_scale, int samples,
                                   std::uint64_t seed) {
    if (perturbation_scale <= 0.0 || perturbation_scale > 0.5)
        throw std::invalid_argument("invalid-order: perturbation scale in (0, 0.5]");
    ScanSummary s;
    s.n = n;
    s.samples = samples;
    s.scale = perturbation_scale;
    UnitaryBasis ofdm = basis_ofdm(n);
    s.ofdm_eisl = eisl_aacf(ofdm, 1.0);
    s.min_sampled_eisl = std::numeric_limits<double>::infinity();
    auto rng = make_rng(seed);
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXcd h = random_hermitian(n, rng);
        UnitaryBasis b{n, unitary_exp(h, perturbation_scale) * ofdm.u, "perturbed"};
        s.min_sampled_eisl = std::min(s.min_sampled_eisl, eisl_aacf(b, 1.0));
    }
    s.ofdm_attains_min = s.ofdm_eisl <= s.min_sampled_eisl + 1e-9 * s.ofdm_eisl;
    return s;
}

DualityReport doppler_duality_check(int n, const Constellation& c, long trials,
                                    std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("invalid-order: trials must be >= 100");
    DualityReport rep;
    rep.n = n;
    rep.trials = trials;
    double mu4 = kurtosis(c);
    rep.sc_doppler =
        monte_carlo_profile(basis_sc(n), c, AcfMode::doppler_periodic, trials, seed);
    rep.ofdm_pacf = expected_pacf(basis_ofdm(n), mu4).per_lag;

    int ok = 0;
    for (int k = 1; k < n; ++k) {
        double tol = 3.0 * rep.sc_doppler.std_err[k] + 1e-9 * rep.ofdm_pacf[0];
        if (std::abs(rep.sc_doppler.mean_sq[k] - rep.ofdm_pacf[k]) <= tol) ++ok;
    }
    rep.match_fraction = static_cast<double>(ok) / (n - 1);

    // closed-form Doppler levels of the competing schemes, per sidelobe lag
    bool lowest = true;
    for (const auto& other : {basis_ofdm(n), basis_cdma(n)}) {
        Eigen::VectorXd lvl = expected_doppler(other, mu4).per_lag;
        Eigen::VectorXd sc_lvl = expected_doppler(basis_sc(n), mu4).per_lag;
        for (int k = 1; k < n; ++k)
            if (sc_lvl[k] > lvl[k] + 1e-8 * lvl.maxCoeff()) lowest = false;
    }
    rep.sc_lowest = lowest;
    return rep;
}

} // namespace isac
