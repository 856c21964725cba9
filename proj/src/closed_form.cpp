#include "isac/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac {

double l4_norm_4(const Eigen::MatrixXcd& m) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double a = std::norm(m(i, j));
            acc += a * a;
        }
    return acc;
}

Eigen::MatrixXcd half_dft_2n(int n) {
    return dft_matrix(2 * n).leftCols(n);
}

namespace {

// Squared row magnitudes of V = U^H F^H; row p feeds b_k[p] as a DFT.
Eigen::MatrixXd v_row_magnitudes(const UnitaryBasis& basis) {
    Eigen::MatrixXcd v = basis.u.adjoint() * dft_matrix(basis.n).adjoint();
    return v.cwiseAbs2();
}

Eigen::VectorXcd b_from_magnitudes(const Eigen::MatrixXd& w, int k) {
    const int n = static_cast<int>(w.rows());
    Eigen::VectorXcd b(n);
    for (int p = 0; p < n; ++p) {
        cdouble acc = 0.0;
        for (int q = 0; q < n; ++q)
            acc += w(p, q) * std::polar(1.0, -2.0 * std::numbers::pi * k * q / n);
        b[p] = acc;
    }
    return b;
}

} // namespace

Eigen::VectorXcd b_vector(const UnitaryBasis& basis, int k) {
    if (k < 0 || k >= basis.n) throw std::invalid_argument("invalid-lag");
    return b_from_magnitudes(v_row_magnitudes(basis), k);
}

ClosedFormReport expected_pacf(const UnitaryBasis& basis, double mu4) {
    if (mu4 < 1.0) throw std::invalid_argument("invalid-order: mu4 must be >= 1");
    const int n = basis.n;
    const double dn = n;
    Eigen::MatrixXd w = v_row_magnitudes(basis);
    ClosedFormReport r;
    r.mode = AcfMode::periodic;
    r.per_lag.resize(n);
    for (int k = 0; k < n; ++k) {
        double bk2 = b_from_magnitudes(w, k).squaredNorm();
        r.per_lag[k] = (k == 0 ? dn * dn : 0.0) + dn + (mu4 - 2.0) * bk2;
    }
    r.mainlobe = dn * dn + (mu4 - 1.0) * dn;
    r.l4_objective = l4_norm_4(dft_matrix(n) * basis.u);
    r.eisl = dn * (dn - 1.0) + (mu4 - 2.0) * dn * (r.l4_objective - 1.0);
    return r;
}

double eisl_pacf(const UnitaryBasis& basis, double mu4) {
    if (mu4 < 1.0) throw std::invalid_argument("invalid-order: mu4 must be >= 1");
    const double dn = basis.n;
    return dn * (dn - 1.0) +
           (mu4 - 2.0) * dn * (l4_norm_4(dft_matrix(basis.n) * basis.u) - 1.0);
}

ClosedFormReport expected_aacf(const UnitaryBasis& basis, double mu4) {
    if (mu4 < 1.0) throw std::invalid_argument("invalid-order: mu4 must be >= 1");
    const int n = basis.n;
    const double dn = n;
    ClosedFormReport r;
    r.mode = AcfMode::aperiodic;
    r.per_lag = Eigen::VectorXd::Zero(n);
    // sum over columns of |column A-ACF at lag k|^2
    for (int m = 0; m < n; ++m) {
        Eigen::VectorXcd col_acf = aperiodic_acf(basis.u.col(m));
        for (int k = 0; k < n; ++k) r.per_lag[k] += std::norm(col_acf[k]);
    }
    for (int k = 0; k < n; ++k)
        r.per_lag[k] = (k == 0 ? dn * dn : 0.0) + (dn - k) +
                       (mu4 - 2.0) * r.per_lag[k];
    r.mainlobe = dn * dn + (mu4 - 1.0) * dn;
    r.l4_objective = l4_norm_4(half_dft_2n(n) * basis.u);
    r.eisl = dn * (dn - 1.0) / 2.0 + (mu4 - 2.0) * dn * (r.l4_objective - 0.5);
    return r;
}

double eisl_aacf(const UnitaryBasis& basis, double mu4) {
    if (mu4 < 1.0) throw std::invalid_argument("invalid-order: mu4 must be >= 1");
    const double dn = basis.n;
    return dn * (dn - 1.0) / 2.0 +
           (mu4 - 2.0) * dn * (l4_norm_4(half_dft_2n(basis.n) * basis.u) - 0.5);
}

ClosedFormReport expected_doppler(const UnitaryBasis& basis, double mu4) {
    UnitaryBasis eff{basis.n, dft_matrix(basis.n) * basis.u, basis.scheme + "+dft"};
    ClosedFormReport r = expected_pacf(eff, mu4);
    r.mode = AcfMode::doppler_periodic;
    return r;
}

AcfProfile to_profile(const ClosedFormReport& r) {
    AcfProfile p;
    p.n = static_cast<int>(r.per_lag.size());
    p.mode = r.mode;
    p.mean_sq = r.per_lag;
    p.std_err = Eigen::VectorXd::Zero(p.n);
    p.trials = 0;
    p.source = "closed_form";
    return p;
}

} // namespace isac
