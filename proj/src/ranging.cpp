#include "isac/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/rng.hpp"

namespace isac {

double range_bin_m(double bandwidth_hz) {
    return kSpeedOfLight / (2.0 * bandwidth_hz);
}

int range_to_bin(double range_m, double bandwidth_hz) {
    if (range_m < 0.0) throw std::invalid_argument("invalid-order: negative range");
    return static_cast<int>(std::lround(2.0 * range_m * bandwidth_hz / kSpeedOfLight));
}

double bin_to_range(int bin, double bandwidth_hz) {
    return bin * range_bin_m(bandwidth_hz);
}

namespace {

int max_target_bin(const RangingScenario& sc) {
    int mb = 0;
    for (const auto& t : sc.targets)
        mb = std::max(mb, range_to_bin(t.range_m, sc.bandwidth_hz));
    return mb;
}

void check_scenario(const RangingScenario& sc) {
    if (sc.targets.empty())
        throw std::invalid_argument("invalid-order: no targets");
    for (const auto& t : sc.targets) {
        if (t.power <= 0.0)
            throw std::invalid_argument("invalid-order: non-positive target power");
        if (sc.cp && range_to_bin(t.range_m, sc.bandwidth_hz) >= sc.n)
            throw std::invalid_argument("out-of-window: delay exceeds block with CP");
    }
}

} // namespace

Eigen::VectorXcd noiseless_echo(const Eigen::VectorXcd& x, const RangingScenario& sc) {
    check_scenario(sc);
    const int n = static_cast<int>(x.size());
    if (sc.cp) {
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        for (const auto& t : sc.targets) {
            int b = range_to_bin(t.range_m, sc.bandwidth_hz);
            double a = std::sqrt(t.power);
            for (int i = 0; i < n; ++i) y[(i + b) % n] += a * x[i];
        }
        return y;
    }
    const int len = n + max_target_bin(sc);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(len);
    for (const auto& t : sc.targets) {
        int b = range_to_bin(t.range_m, sc.bandwidth_hz);
        double a = std::sqrt(t.power);
        for (int i = 0; i < n; ++i) y[i + b] += a * x[i];
    }
    return y;
}

Eigen::VectorXcd unit_noise(int len, std::uint64_t trial_seed) {
    auto rng = make_rng(trial_seed ^ 0x6e6f697365ULL); // separate stream from symbols
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::VectorXcd z(len);
    for (int i = 0; i < len; ++i) z[i] = cdouble(gauss(rng), gauss(rng));
    return z;
}

Eigen::VectorXcd synthesize_echo(const Eigen::VectorXcd& x, const RangingScenario& sc,
                                 std::uint64_t trial_seed, double noise_var) {
    Eigen::VectorXcd y = noiseless_echo(x, sc);
    if (noise_var > 0.0)
        y += std::sqrt(noise_var) * unit_noise(static_cast<int>(y.size()), trial_seed);
    return y;
}

Eigen::VectorXd matched_filter(const Eigen::VectorXcd& y, const Eigen::VectorXcd& x,
                               bool cp) {
    const int n = static_cast<int>(x.size());
    if (cp) {
        if (y.size() != n) throw std::invalid_argument("invalid-input: length mismatch");
        Eigen::VectorXd out(n);
        for (int l = 0; l < n; ++l) {
            cdouble acc = 0.0;
            for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * y[(i + l) % n];
            out[l] = std::norm(acc);
        }
        return out;
    }
    if (y.size() < n) throw std::invalid_argument("invalid-input: length mismatch");
    const int lags = static_cast<int>(y.size()) - n + 1;
    Eigen::VectorXd out(lags);
    for (int l = 0; l < lags; ++l) {
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i + l];
        out[l] = std::norm(acc);
    }
    return out;
}

std::vector<double> estimate_ranges(const Eigen::VectorXd& profile, int n_targets,
                                    int min_separation_bins, double bandwidth_hz) {
    if (n_targets < 1) throw std::invalid_argument("invalid-order: n_targets >= 1");
    const int bins = static_cast<int>(profile.size());
    Eigen::VectorXd work = profile;
    std::vector<double> est;
    for (int t = 0; t < n_targets; ++t) {
        int best = -1;
        double best_v = 0.0;
        for (int i = 0; i < bins; ++i)
            if (work[i] > best_v) {
                best_v = work[i];
                best = i;
            }
        if (best < 0) break; // flat profile, fewer peaks than targets
        est.push_back(bin_to_range(best, bandwidth_hz));
        for (int i = std::max(0, best - min_separation_bins);
             i <= std::min(bins - 1, best + min_separation_bins); ++i)
            work[i] = 0.0;
    }
    return est;
}

std::vector<RmseRow> rmse_sweep(const RangingScenario& sc) {
    check_scenario(sc);
    if (sc.trials < 1) throw std::invalid_argument("invalid-order: trials >= 1");
    const int n_targets = static_cast<int>(sc.targets.size());
    const int n_snr = static_cast<int>(sc.snr_db.size());
    const double delta = range_bin_m(sc.bandwidth_hz);
    const int window_bins = sc.cp ? sc.n : max_target_bin(sc) + 1;
    const double window_span = window_bins * delta;

    std::vector<double> sq_sum(n_snr * n_targets, 0.0);
    std::vector<double> sq_sq_sum(n_snr * n_targets, 0.0);

    for (long t = 0; t < sc.trials; ++t) {
        auto rng = trial_rng(sc.seed, static_cast<std::uint64_t>(t));
        Eigen::VectorXcd x = sc.basis.u * sample_symbols(sc.constellation, sc.n, rng);
        Eigen::VectorXcd y0 = noiseless_echo(x, sc);
        Eigen::VectorXcd z = unit_noise(static_cast<int>(y0.size()),
                                        splitmix64(sc.seed) ^ static_cast<std::uint64_t>(t));
        for (int s = 0; s < n_snr; ++s) {
            double noise_std = std::pow(10.0, -sc.snr_db[s] / 20.0);
            Eigen::VectorXcd y = y0 + noise_std * z;
            Eigen::VectorXd prof = matched_filter(y, x, sc.cp);
            std::vector<double> est =
                estimate_ranges(prof, n_targets, sc.min_separation_bins, sc.bandwidth_hz);
            // each estimate claims its nearest true target; unclaimed targets
            // count as missed detections at the full window span
            std::vector<double> best_err(n_targets, window_span);
            for (double e : est) {
                int nearest = 0;
                double nearest_d = std::abs(e - sc.targets[0].range_m);
                for (int j = 1; j < n_targets; ++j) {
                    double d = std::abs(e - sc.targets[j].range_m);
                    if (d < nearest_d) {
                        nearest_d = d;
                        nearest = j;
                    }
                }
                best_err[nearest] = std::min(best_err[nearest], nearest_d);
            }
            for (int j = 0; j < n_targets; ++j) {
                double se = best_err[j] * best_err[j];
                sq_sum[s * n_targets + j] += se;
                sq_sq_sum[s * n_targets + j] += se * se;
            }
        }
    }

    std::vector<RmseRow> rows;
    rows.reserve(n_snr * n_targets);
    for (int s = 0; s < n_snr; ++s)
        for (int j = 0; j < n_targets; ++j) {
            RmseRow r;
            r.snr_db = sc.snr_db[s];
            r.target = j;
            r.trials = sc.trials;
            r.mse = sq_sum[s * n_targets + j] / sc.trials;
            r.rmse_m = std::sqrt(r.mse);
            if (sc.trials > 1) {
                double var = (sq_sq_sum[s * n_targets + j] - sc.trials * r.mse * r.mse) /
                             static_cast<double>(sc.trials - 1);
                r.mse_std_err = std::sqrt(std::max(var, 0.0) / sc.trials);
            }
            rows.push_back(r);
        }
    return rows;
}

} // namespace isac
