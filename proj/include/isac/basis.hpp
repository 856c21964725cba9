#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isac {

using cdouble = std::complex<double>;

/// N x N unitary signaling basis; x = U s.
struct UnitaryBasis {
    int n = 0;
    Eigen::MatrixXcd u;
    std::string scheme;
};

// Unitary DFT matrix, forward kernel (1/sqrt(n)) e^{-j 2 pi p q / n}.
Eigen::MatrixXcd dft_matrix(int n);

UnitaryBasis basis_sc(int n);
UnitaryBasis basis_ofdm(int n);
UnitaryBasis basis_ofdm_multi(int l, int m);   // I_L kron F_M^H
UnitaryBasis basis_cdma(int n);                // Hadamard / sqrt(n), n = 2^k
UnitaryBasis basis_otfs(int m, int l);         // F_M^H kron I_L
UnitaryBasis basis_afdm(int n, double c1, double c2);

// U = F_n^H Pi Diag(theta); perm is 0-based, phases unit-modulus.
UnitaryBasis basis_generalized_ofdm(int n, const std::vector<int>& perm,
                                    const Eigen::VectorXcd& phases);
UnitaryBasis basis_generalized_ofdm_random(int n, std::uint64_t seed);

UnitaryBasis haar_unitary(int n, std::mt19937_64& rng);

// Dense shift-matrix views; correlation code applies shifts by indexing.
Eigen::MatrixXd shift_matrix(int n, int k);           // ones at (i, i+k)
Eigen::MatrixXd periodic_shift_matrix(int n, int k);  // cyclic permutation

// Max-abs residual of the decomposition of the periodic shift matrix into
// sqrt(n) F^H Diag(f_{n-k+1}) F, with the column index wrapped at n.
double verify_lemma1(int n, int k);

double unitarity_residual(const UnitaryBasis& b); // max |U^H U - I|

// Spec strings: "sc", "ofdm", "ofdm:L=4,M=32", "cdma", "otfs:M=16,L=8",
// "afdm:c1=0.0078125,c2=0.015625", "gofdm:perm=random,seed=1".
UnitaryBasis parse_basis(const std::string& spec, int n);

} // namespace isac
