#include "isac/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

Eigen::MatrixXcd dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("invalid-order: DFT size must be >= 1");
    Eigen::MatrixXcd f(n, n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double phi = -2.0 * std::numbers::pi * ((static_cast<long>(p) * q) % n) / n;
            f(p, q) = scale * std::polar(1.0, phi);
        }
    return f;
}

UnitaryBasis basis_sc(int n) {
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    return {n, Eigen::MatrixXcd::Identity(n, n), "sc"};
}

UnitaryBasis basis_ofdm(int n) {
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    return {n, dft_matrix(n).adjoint(), "ofdm"};
}

UnitaryBasis basis_ofdm_multi(int l, int m) {
    if (l < 1 || m < 2)
        throw std::invalid_argument("invalid-order: need L >= 1 and M >= 2");
    Eigen::MatrixXcd fmh = dft_matrix(m).adjoint();
    int n = l * m;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int b = 0; b < l; ++b) u.block(b * m, b * m, m, m) = fmh;
    return {n, std::move(u), "ofdm_multi"};
}

UnitaryBasis basis_cdma(int n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("unsupported-size: Hadamard order must be a power of 2");
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = 1.0;
    while (h.rows() < n) {
        Eigen::MatrixXd next(2 * h.rows(), 2 * h.cols());
        next << h, h, h, -h;
        h = std::move(next);
    }
    return {n, (h / std::sqrt(static_cast<double>(n))).cast<cdouble>(), "cdma"};
}

UnitaryBasis basis_otfs(int m, int l) {
    if (m < 1 || l < 1 || m * l < 2)
        throw std::invalid_argument("invalid-order: need M*L >= 2");
    Eigen::MatrixXcd fmh = dft_matrix(m).adjoint();
    int n = m * l;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            u.block(a * l, b * l, l, l) =
                fmh(a, b) * Eigen::MatrixXcd::Identity(l, l);
    return {n, std::move(u), "otfs"};
}

UnitaryBasis basis_afdm(int n, double c1, double c2) {
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    auto chirp = [n](double c) {
        Eigen::VectorXcd d(n);
        for (int m = 0; m < n; ++m)
            d[m] = std::polar(1.0, -2.0 * std::numbers::pi * c * m * m);
        return d;
    };
    Eigen::VectorXcd d1 = chirp(c1), d2 = chirp(c2);
    Eigen::MatrixXcd u = d1.conjugate().asDiagonal() * dft_matrix(n).adjoint() *
                         d2.conjugate().asDiagonal();
    return {n, std::move(u), "afdm"};
}

UnitaryBasis basis_generalized_ofdm(int n, const std::vector<int>& perm,
                                    const Eigen::VectorXcd& phases) {
    if (static_cast<int>(perm.size()) != n || phases.size() != n)
        throw std::invalid_argument("invalid-order: perm/phases size mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw std::invalid_argument("invalid-order: not a permutation");
        seen[p] = true;
    }
    for (int i = 0; i < n; ++i)
        if (std::abs(std::abs(phases[i]) - 1.0) > 1e-12)
            throw std::invalid_argument("invalid-phase: phases must be unit modulus");
    Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) pi(perm[j], j) = 1.0; // column j hits row perm[j]
    Eigen::MatrixXcd u = dft_matrix(n).adjoint() * pi * phases.asDiagonal().toDenseMatrix();
    return {n, std::move(u), "gofdm"};
}

UnitaryBasis basis_generalized_ofdm_random(int n, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) phases[i] = std::polar(1.0, uni(rng));
    return basis_generalized_ofdm(n, perm, phases);
}

UnitaryBasis haar_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cdouble(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    // fix the phase ambiguity so the distribution is Haar
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        cdouble d = r(j, j);
        q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : 1.0;
    }
    return {n, std::move(q), "haar"};
}

Eigen::MatrixXd shift_matrix(int n, int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("invalid-lag");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + k < n; ++i) j(i, i + k) = 1.0;
    return j;
}

Eigen::MatrixXd periodic_shift_matrix(int n, int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("invalid-lag");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) j(i, (i + k) % n) = 1.0;
    return j;
}

double verify_lemma1(int n, int k) {
    Eigen::MatrixXcd f = dft_matrix(n);
    int col = (n - k) % n; // column N-k+1 (1-based), wrapping k = 0 to column 1
    Eigen::MatrixXcd rhs = std::sqrt(static_cast<double>(n)) * f.adjoint() *
                           f.col(col).asDiagonal() * f;
    Eigen::MatrixXcd lhs = periodic_shift_matrix(n, k).cast<cdouble>();
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double unitarity_residual(const UnitaryBasis& b) {
    return (b.u.adjoint() * b.u - Eigen::MatrixXcd::Identity(b.n, b.n))
        .cwiseAbs()
        .maxCoeff();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur.push_back(ch);
    }
    out.push_back(cur);
    return out;
}

std::pair<std::string, std::string> key_value(const std::string& s) {
    auto pos = s.find('=');
    if (pos == std::string::npos)
        throw std::invalid_argument("malformed basis spec token: " + s);
    return {s.substr(0, pos), s.substr(pos + 1)};
}

} // namespace

UnitaryBasis parse_basis(const std::string& spec, int n) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = (colon == std::string::npos) ? "" : spec.substr(colon + 1);

    if (name == "sc") return basis_sc(n);
    if (name == "cdma") return basis_cdma(n);
    if (name == "ofdm") {
        if (args.empty()) return basis_ofdm(n);
        int l = 0, m = 0;
        for (const auto& t : split(args, ',')) {
            auto [k, v] = key_value(t);
            if (k == "L") l = std::stoi(v);
            else if (k == "M") m = std::stoi(v);
            else throw std::invalid_argument("malformed basis spec token: " + t);
        }
        if (l * m != n)
            throw std::invalid_argument("malformed basis spec token: L*M != n");
        return basis_ofdm_multi(l, m);
    }
    if (name == "otfs") {
        int l = 0, m = 0;
        for (const auto& t : split(args, ',')) {
            auto [k, v] = key_value(t);
            if (k == "L") l = std::stoi(v);
            else if (k == "M") m = std::stoi(v);
            else throw std::invalid_argument("malformed basis spec token: " + t);
        }
        if (l * m != n)
            throw std::invalid_argument("malformed basis spec token: M*L != n");
        return basis_otfs(m, l);
    }
    if (name == "afdm") {
        double c1 = 0.0, c2 = 0.0;
        for (const auto& t : split(args, ',')) {
            auto [k, v] = key_value(t);
            if (k == "c1") c1 = std::stod(v);
            else if (k == "c2") c2 = std::stod(v);
            else throw std::invalid_argument("malformed basis spec token: " + t);
        }
        return basis_afdm(n, c1, c2);
    }
    if (name == "gofdm") {
        std::uint64_t seed = 0;
        std::string perm = "random";
        for (const auto& t : split(args, ',')) {
            auto [k, v] = key_value(t);
            if (k == "perm") perm = v;
            else if (k == "seed") seed = std::stoull(v);
            else throw std::invalid_argument("malformed basis spec token: " + t);
        }
        if (perm != "random")
            throw std::invalid_argument("malformed basis spec token: perm=" + perm);
        return basis_generalized_ofdm_random(n, seed);
    }
    throw std::invalid_argument("malformed basis spec token: " + name);
}

} // namespace isac
