#pragma once

#include <Eigen/Dense>

#include "isac/acf.hpp"
#include "isac/basis.hpp"

namespace isac {

/// Closed-form expected squared ACF and its integrated sidelobe level.
struct ClosedFormReport {
    Eigen::VectorXd per_lag;
    double eisl = 0.0;
    double mainlobe = 0.0;
    double l4_objective = 0.0;
    AcfMode mode = AcfMode::periodic;
};

double l4_norm_4(const Eigen::MatrixXcd& m); // sum |m_ij|^4

// First n columns of the unitary DFT matrix of size 2n.
Eigen::MatrixXcd half_dft_2n(int n);

// b_k[p] = sum_n |v_{p,n}|^2 e^{-j 2 pi k (n-1) / N}, V = U^H F_N^H.
Eigen::VectorXcd b_vector(const UnitaryBasis& basis, int k);

// E|r~_k|^2 = N^2 d_{0,k} + N + (mu4 - 2) ||b_k||^2.
ClosedFormReport expected_pacf(const UnitaryBasis& basis, double mu4);
double eisl_pacf(const UnitaryBasis& basis, double mu4);

// E|r_k|^2 = N^2 d_{0,k} + (N - k) + (mu4 - 2) sum_m |u_m^H J_k u_m|^2.
ClosedFormReport expected_aacf(const UnitaryBasis& basis, double mu4);
double eisl_aacf(const UnitaryBasis& basis, double mu4);

// Closed-form Doppler slice profile: P-ACF statistics of the effective
// basis F_N U.
ClosedFormReport expected_doppler(const UnitaryBasis& basis, double mu4);

AcfProfile to_profile(const ClosedFormReport& r);

} // namespace isac
