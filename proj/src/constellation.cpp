#include "isac/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {
namespace {

constexpr double kMomentTol = 1e-12;
constexpr double kClassifyTol = 1e-9;

bool is_perfect_even_square(int order, int& side) {
    side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    return side * side == order && side % 2 == 0;
}

cdouble weighted_sum(const Constellation& c,
                     const std::function<cdouble(const cdouble&)>& f) {
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        acc += c.probabilities[i] * f(c.points[i]);
    return acc;
}

void normalize_power(Constellation& c) {
    double p = average_power(c);
    if (p <= 0.0)
        throw std::invalid_argument("degenerate-constellation: zero power");
    double g = 1.0 / std::sqrt(p);
    for (auto& s : c.points) s *= g;
}

} // namespace

double mean_abs(const Constellation& c) {
    return std::abs(weighted_sum(c, [](const cdouble& s) { return s; }));
}

double pseudo_variance_abs(const Constellation& c) {
    return std::abs(weighted_sum(c, [](const cdouble& s) { return s * s; }));
}

double average_power(const Constellation& c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        acc += c.probabilities[i] * std::norm(c.points[i]);
    return acc;
}

double kurtosis(const Constellation& c) {
    double m4 = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double p2 = std::norm(c.points[i]);
        m4 += c.probabilities[i] * p2 * p2;
    }
    double m2 = average_power(c);
    return m4 / (m2 * m2);
}

GaussianClass classify(const Constellation& c) {
    double mu4 = kurtosis(c);
    if (mu4 < 2.0 - kClassifyTol) return GaussianClass::sub_gaussian;
    if (mu4 > 2.0 + kClassifyTol) return GaussianClass::super_gaussian;
    return GaussianClass::gaussian_like;
}

std::string to_string(GaussianClass g) {
    switch (g) {
        case GaussianClass::sub_gaussian: return "sub_gaussian";
        case GaussianClass::gaussian_like: return "gaussian_like";
        default: return "super_gaussian";
    }
}

void validate(const Constellation& c) {
    if (c.points.empty() || c.points.size() != c.probabilities.size())
        throw std::invalid_argument("invalid-geometry: empty or mismatched alphabet");
    double psum = 0.0;
    for (double p : c.probabilities) {
        if (p < 0.0)
            throw std::invalid_argument("invalid-geometry: negative probability");
        psum += p;
    }
    if (std::abs(psum - 1.0) > kMomentTol)
        throw std::invalid_argument("invalid-geometry: probabilities do not sum to 1");
    if (std::abs(average_power(c) - 1.0) > kMomentTol)
        throw std::invalid_argument("invalid-geometry: average power is not 1");
    if (!c.assumption2_violated) {
        if (mean_abs(c) > kMomentTol)
            throw std::invalid_argument("invalid-geometry: nonzero mean");
        if (pseudo_variance_abs(c) > kMomentTol)
            throw std::invalid_argument("invalid-geometry: nonzero pseudo-variance");
    }
    if (kurtosis(c) < 1.0 - kMomentTol)
        throw std::invalid_argument("invalid-geometry: kurtosis below 1");
}

Constellation make_psk(int order) {
    if (order < 2) throw std::invalid_argument("invalid-order: PSK order must be >= 2");
    Constellation c;
    c.points.reserve(order);
    // half-step offset aligns QPSK with 4-QAM; BPSK stays on the real axis
    double offset = (order == 2) ? 0.0 : std::numbers::pi / order;
    for (int m = 0; m < order; ++m) {
        double phi = 2.0 * std::numbers::pi * m / order + offset;
        c.points.emplace_back(std::cos(phi), std::sin(phi));
    }
    c.probabilities.assign(order, 1.0 / order);
    c.label = "psk:" + std::to_string(order);
    c.assumption2_violated = (order == 2); // BPSK: E(s^2) = 1
    validate(c);
    return c;
}

Constellation make_qam(int order) {
    int side = 0;
    if (order < 4 || !is_perfect_even_square(order, side))
        throw std::invalid_argument(
            "unsupported-order: QAM order must be a perfect square of even side");
    Constellation c;
    c.points.reserve(order);
    // odd integer grid, scaled to unit average power: E L^2 = (side^2-1)/3 per
    // dimension, so divide by sqrt(2 (order - 1) / 3)
    double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
    for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b) {
            double re = (2 * a - side + 1) * scale;
            double im = (2 * b - side + 1) * scale;
            c.points.emplace_back(re, im);
        }
    c.probabilities.assign(order, 1.0 / order);
    c.label = "qam:" + std::to_string(order);
    validate(c);
    return c;
}

Constellation make_apsk(const std::vector<double>& radii,
                        const std::vector<int>& points_per_ring) {
    if (radii.empty() || radii.size() != points_per_ring.size())
        throw std::invalid_argument("invalid-geometry: ring lists empty or mismatched");
    Constellation c;
    for (std::size_t r = 0; r < radii.size(); ++r) {
        if (radii[r] <= 0.0 || points_per_ring[r] < 1)
            throw std::invalid_argument("invalid-geometry: bad ring radius or count");
        int m = points_per_ring[r];
        double offset = (r % 2 == 1) ? std::numbers::pi / m : 0.0; // odd rings half-step
        for (int i = 0; i < m; ++i) {
            double phi = 2.0 * std::numbers::pi * i / m + offset;
            c.points.emplace_back(radii[r] * std::cos(phi), radii[r] * std::sin(phi));
        }
    }
    c.probabilities.assign(c.points.size(), 1.0 / c.points.size());
    normalize_power(c);
    c.label = "apsk:" + std::to_string(radii.size()) + "x" +
              std::to_string(points_per_ring[0]);
    validate(c);
    return c;
}

Constellation apply_index_modulation(const Constellation& base, double p0) {
    if (p0 < 0.0 || p0 >= 1.0)
        throw std::invalid_argument("degenerate-constellation: p0 must be in [0, 1)");
    Constellation c;
    c.points.push_back(0.0);
    c.probabilities.push_back(p0);
    for (std::size_t i = 0; i < base.points.size(); ++i) {
        c.points.push_back(base.points[i]);
        c.probabilities.push_back((1.0 - p0) * base.probabilities[i]);
    }
    normalize_power(c);
    std::ostringstream os;
    os << "im:" << base.label << ":p0=" << p0;
    c.label = os.str();
    c.assumption2_violated = base.assumption2_violated;
    validate(c);
    return c;
}

Eigen::VectorXcd sample_symbols(const Constellation& c, int count,
                                std::mt19937_64& rng) {
    if (count < 1) throw std::invalid_argument("invalid-order: count must be >= 1");
    std::vector<double> cdf(c.probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += c.probabilities[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXcd out(count);
    for (int i = 0; i < count; ++i) {
        double u = uni(rng);
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        out[i] = c.points[static_cast<std::size_t>(it - cdf.begin())];
    }
    return out;
}

Eigen::VectorXcd sample_symbols(const Constellation& c, int count,
                                std::uint64_t seed) {
    auto rng = make_rng(seed);
    return sample_symbols(c, count, rng);
}

Eigen::MatrixXd moment_matrix(const Constellation& c, int n) {
    if (n < 2) throw std::invalid_argument("invalid-order: n must be >= 2");
    if (c.assumption2_violated)
        throw std::invalid_argument(
            "unsupported-moment-structure: constellation violates rotational symmetry");
    validate(c);
    double mu4 = kurtosis(c);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n * n, n * n);
    // vec(s s^H) index: (m*n + p) <-> s_p conj(s_m); entry is E(s_m^* s_n s_p s_q^*)
    for (int i = 0; i < n * n; ++i) {
        int m = i / n, p = i % n;
        for (int j = 0; j < n * n; ++j) {
            int nn = j / n, q = j % n;
            if (m == nn && p == q && m == p) s(i, j) = mu4;
            else if (m == nn && p == q) s(i, j) = 1.0;
            else if (m == p && nn == q) s(i, j) = 1.0;
        }
    }
    return s;
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

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw std::invalid_argument("malformed constellation spec token: " + what + "=" + s);
    }
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw std::invalid_argument("malformed constellation spec token: " + what + "=" + s);
    }
}

} // namespace

Constellation parse_constellation(const std::string& spec) {
    if (spec.rfind("im:", 0) == 0) {
        auto pos = spec.rfind(":p0=");
        if (pos == std::string::npos)
            throw std::invalid_argument("malformed constellation spec token: " + spec);
        double p0 = parse_double(spec.substr(pos + 4), "p0");
        return apply_index_modulation(parse_constellation(spec.substr(3, pos - 3)), p0);
    }
    auto parts = split(spec, ':');
    if (parts[0] == "psk" && parts.size() == 2)
        return make_psk(parse_int(parts[1], "order"));
    if (parts[0] == "qam" && parts.size() == 2)
        return make_qam(parse_int(parts[1], "order"));
    if (parts[0] == "apsk" && parts.size() == 2) {
        std::vector<double> radii;
        std::vector<int> counts;
        for (const auto& field : split(parts[1], ';')) {
            if (field.rfind("r=", 0) == 0)
                for (const auto& t : split(field.substr(2), ','))
                    radii.push_back(parse_double(t, "r"));
            else if (field.rfind("n=", 0) == 0)
                for (const auto& t : split(field.substr(2), ','))
                    counts.push_back(parse_int(t, "n"));
            else
                throw std::invalid_argument("malformed constellation spec token: " + field);
        }
        return make_apsk(radii, counts);
    }
    throw std::invalid_argument("malformed constellation spec token: " + spec);
}

} // namespace isac
