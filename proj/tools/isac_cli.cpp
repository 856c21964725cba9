#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isac/acf.hpp"
#include "isac/basis.hpp"
#include "isac/closed_form.hpp"
#include "isac/constellation.hpp"
#include "isac/optimality.hpp"
#include "isac/ranging.hpp"

namespace {

constexpr const char* kVersion = "isac 1.0.0";

struct OutputFile {
    std::ostream* os = &std::cout;
    std::ofstream file;
    explicit OutputFile(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::ios_base::failure("cannot open output file: " + path);
        os = &file;
    }
};

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void metadata(std::ostream& os, const std::string& config, std::uint64_t seed,
              double wall_s) {
    os << "# version: " << kVersion << "\n";
    os << "# config: " << config << "\n";
    os << "# seed: " << seed << "\n";
    os << "# wall_clock_s: " << wall_s << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

// "16:1024:x2" (geometric) or "64:512:64" (arithmetic) or "128" (single value)
std::vector<int> parse_n_sweep(const std::string& s) {
    auto parts = split(s, ':');
    std::vector<int> out;
    if (parts.size() == 1) {
        out.push_back(std::stoi(parts[0]));
        return out;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("malformed n sweep token: " + s);
    int lo = std::stoi(parts[0]);
    int hi = std::stoi(parts[1]);
    if (parts[2].size() > 1 && parts[2][0] == 'x') {
        int f = std::stoi(parts[2].substr(1));
        if (lo < 1 || f < 2) throw std::invalid_argument("malformed n sweep token: " + s);
        for (int n = lo; n <= hi; n *= f) out.push_back(n);
    } else {
        int step = std::stoi(parts[2]);
        if (step < 1) throw std::invalid_argument("malformed n sweep token: " + s);
        for (int n = lo; n <= hi; n += step) out.push_back(n);
    }
    return out;
}

std::vector<double> parse_snr_grid(const std::string& s) {
    auto parts = split(s, ':');
    std::vector<double> out;
    if (parts.size() == 1) {
        out.push_back(std::stod(parts[0]));
        return out;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("malformed snr grid token: " + s);
    double lo = std::stod(parts[0]), hi = std::stod(parts[1]), step = std::stod(parts[2]);
    if (step <= 0) throw std::invalid_argument("malformed snr grid token: " + s);
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return out;
}

std::vector<isac::Target> parse_targets(const std::string& s) {
    std::vector<isac::Target> out;
    for (const auto& tok : split(s, ',')) {
        auto rp = split(tok, ':');
        if (rp.size() != 2) throw std::invalid_argument("malformed target token: " + tok);
        out.push_back({std::stod(rp[0]), std::stod(rp[1])});
    }
    if (out.empty()) throw std::invalid_argument("malformed target list: " + s);
    return out;
}

struct AcfArgs {
    std::string scheme = "ofdm", constellation = "psk:4", mode = "periodic";
    std::string sweep_n, out_path;
    int n = 128;
    long trials = 1000;
    std::uint64_t seed = 0;
    bool db = false;
};

int run_acf(const AcfArgs& a, const std::string& config) {
    Timer timer;
    isac::Constellation c = isac::parse_constellation(a.constellation);
    isac::AcfMode mode = isac::acf_mode_from_string(a.mode);
    double mu4 = isac::kurtosis(c);
    OutputFile out(a.out_path);

    auto closed_form = [&](const isac::UnitaryBasis& b) {
        switch (mode) {
            case isac::AcfMode::periodic: return isac::expected_pacf(b, mu4);
            case isac::AcfMode::aperiodic: return isac::expected_aacf(b, mu4);
            default: return isac::expected_doppler(b, mu4);
        }
    };
    auto as_db = [&](double v) { return a.db ? 10.0 * std::log10(v) : v; };

    if (!a.sweep_n.empty()) {
        std::ostringstream body;
        body << "n,pslr_db_theory,pslr_db_empirical,scheme,constellation,mode,trials,seed\n";
        for (int n : parse_n_sweep(a.sweep_n)) {
            isac::UnitaryBasis b = isac::parse_basis(a.scheme, n);
            isac::AcfProfile emp = isac::monte_carlo_profile(b, c, mode, a.trials, a.seed);
            body << n << ',' << isac::pslr_db(isac::to_profile(closed_form(b))) << ','
                 << isac::pslr_db(emp) << ',' << a.scheme << ',' << a.constellation << ','
                 << a.mode << ',' << a.trials << ',' << a.seed << '\n';
        }
        metadata(*out.os, config, a.seed, timer.seconds());
        *out.os << body.str();
        return 0;
    }

    isac::UnitaryBasis b = isac::parse_basis(a.scheme, a.n);
    isac::ClosedFormReport cf = closed_form(b);
    isac::AcfProfile emp = isac::monte_carlo_profile(b, c, mode, a.trials, a.seed);
    metadata(*out.os, config, a.seed, timer.seconds());
    *out.os << "lag,mean_sq,stderr,closed_form,mode,scheme,constellation,n,trials,seed\n";
    for (int k = 0; k < a.n; ++k)
        *out.os << k << ',' << as_db(emp.mean_sq[k]) << ',' << emp.std_err[k] << ','
                << as_db(cf.per_lag[k]) << ',' << a.mode << ',' << a.scheme << ','
                << a.constellation << ',' << a.n << ',' << a.trials << ',' << a.seed
                << '\n';
    return 0;
}

struct EislArgs {
    std::string schemes = "sc,ofdm", constellations = "psk:4", mode = "periodic";
    std::string n_sweep = "16:1024:x2", out_path;
};

int run_eisl(const EislArgs& a, const std::string& config) {
    Timer timer;
    isac::AcfMode mode = isac::acf_mode_from_string(a.mode);
    OutputFile out(a.out_path);
    std::ostringstream body;
    body << "n,scheme,constellation,mode,eisl,mainlobe,pslr_db\n";
    for (int n : parse_n_sweep(a.n_sweep))
        for (const auto& scheme : split(a.schemes, ','))
            for (const auto& cs : split(a.constellations, ',')) {
                isac::Constellation c = isac::parse_constellation(cs);
                isac::UnitaryBasis b = isac::parse_basis(scheme, n);
                double mu4 = isac::kurtosis(c);
                isac::ClosedFormReport r = (mode == isac::AcfMode::aperiodic)
                                               ? isac::expected_aacf(b, mu4)
                                               : (mode == isac::AcfMode::periodic
                                                      ? isac::expected_pacf(b, mu4)
                                                      : isac::expected_doppler(b, mu4));
                body << n << ',' << scheme << ',' << cs << ',' << a.mode << ','
                     << r.eisl << ',' << r.mainlobe << ','
                     << isac::pslr_db(isac::to_profile(r)) << '\n';
            }
    metadata(*out.os, config, 0, timer.seconds());
    *out.os << body.str();
    return 0;
}

struct MomentsArgs {
    std::string constellation = "psk:4", out_path;
    int n = 0; // if > 0, also emit the n^2 x n^2 fourth-moment matrix
};

int run_moments(const MomentsArgs& a, const std::string& config) {
    Timer timer;
    isac::Constellation c = isac::parse_constellation(a.constellation);
    OutputFile out(a.out_path);
    nlohmann::json j;
    j["constellation"] = a.constellation;
    j["label"] = c.label;
    j["points"] = c.points.size();
    j["kurtosis"] = isac::kurtosis(c);
    j["class"] = isac::to_string(isac::classify(c));
    j["mean_abs"] = isac::mean_abs(c);
    j["pseudo_variance_abs"] = isac::pseudo_variance_abs(c);
    j["average_power"] = isac::average_power(c);
    if (a.n > 0) {
        Eigen::MatrixXd s = isac::moment_matrix(c, a.n);
        std::vector<std::vector<double>> rows(s.rows());
        for (Eigen::Index i = 0; i < s.rows(); ++i)
            rows[i].assign(s.row(i).begin(), s.row(i).end());
        j["moment_matrix"] = rows;
    }
    metadata(*out.os, config, 0, timer.seconds());
    *out.os << j.dump(2) << '\n';
    return 0;
}

struct OptArgs {
    std::string out_path;
    int n = 8, directions = 100;
    std::uint64_t seed = 1;
};

int run_optimality(const OptArgs& a, const std::string& config) {
    Timer timer;
    isac::OptimalitySummary s = isac::verify_local_optimality(a.n, a.directions, a.seed);
    OutputFile out(a.out_path);
    nlohmann::json j;
    j["n"] = s.n;
    j["directions"] = s.directions;
    j["max_abs_first"] = s.max_abs_first;
    j["max_second"] = s.max_second;
    j["pass"] = s.pass;
    metadata(*out.os, config, a.seed, timer.seconds());
    *out.os << j.dump(2) << '\n';
    return s.pass ? 0 : 2;
}

struct RangingArgs {
    std::string scheme = "ofdm", constellation = "psk:4";
    std::string targets = "11.25:1.0,18.75:0.1", snr = "0:30:5", out_path;
    int n = 128;
    double bandwidth_hz = 800e6;
    bool cp = true;
    long trials = 1000;
    std::uint64_t seed = 0;
};

int run_ranging(const RangingArgs& a, const std::string& config) {
    Timer timer;
    isac::RangingScenario sc;
    sc.bandwidth_hz = a.bandwidth_hz;
    sc.n = a.n;
    sc.targets = parse_targets(a.targets);
    sc.snr_db = parse_snr_grid(a.snr);
    sc.basis = isac::parse_basis(a.scheme, a.n);
    sc.constellation = isac::parse_constellation(a.constellation);
    sc.cp = a.cp;
    sc.trials = a.trials;
    sc.seed = a.seed;
    std::vector<isac::RmseRow> rows = isac::rmse_sweep(sc);
    OutputFile out(a.out_path);
    metadata(*out.os, config, a.seed, timer.seconds());
    *out.os << "snr_db,target,rmse_m,trials,scheme,constellation,cp\n";
    for (const auto& r : rows)
        *out.os << r.snr_db << ',' << r.target << ',' << r.rmse_m << ',' << r.trials
                << ',' << a.scheme << ',' << a.constellation << ','
                << (a.cp ? "true" : "false") << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random ISAC waveform sidelobe and ranging analysis"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) config += ' ';
        config += argv[i];
    }

    AcfArgs acf;
    auto add_acf_flags = [&](CLI::App* sub) {
        sub->add_option("--scheme", acf.scheme);
        sub->add_option("--constellation", acf.constellation);
        sub->add_option("--mode", acf.mode);
        sub->add_option("--n", acf.n);
        sub->add_option("--trials", acf.trials);
        sub->add_option("--seed", acf.seed);
        sub->add_option("--sweep-n", acf.sweep_n);
        sub->add_option("--out", acf.out_path);
        sub->add_flag("--db", acf.db);
        sub->add_option("--threads", [](const std::vector<std::string>&) { return true; },
                        "worker cap (results are thread-count independent)");
    };
    CLI::App* acf_cmd = app.add_subcommand("acf", "Per-lag ACF profile (empirical + closed form)");
    add_acf_flags(acf_cmd);
    CLI::App* dop_cmd = app.add_subcommand("doppler", "Zero-delay Doppler slice profile");
    add_acf_flags(dop_cmd);

    EislArgs eisl;
    CLI::App* eisl_cmd = app.add_subcommand("eisl", "Closed-form EISL sweep over n");
    eisl_cmd->add_option("--schemes", eisl.schemes);
    eisl_cmd->add_option("--constellations", eisl.constellations);
    eisl_cmd->add_option("--mode", eisl.mode);
    eisl_cmd->add_option("--n", eisl.n_sweep);
    eisl_cmd->add_option("--out", eisl.out_path);

    MomentsArgs mom;
    CLI::App* mom_cmd = app.add_subcommand("moments", "Constellation moment report");
    mom_cmd->add_option("--constellation", mom.constellation);
    mom_cmd->add_option("--n", mom.n);
    mom_cmd->add_option("--out", mom.out_path);

    OptArgs opt;
    CLI::App* opt_cmd = app.add_subcommand("optimality", "Geodesic stationarity check");
    opt_cmd->add_option("--n", opt.n);
    opt_cmd->add_option("--directions", opt.directions);
    opt_cmd->add_option("--seed", opt.seed);
    opt_cmd->add_option("--out", opt.out_path);

    RangingArgs rng;
    CLI::App* rng_cmd = app.add_subcommand("ranging", "Two-target matched-filter RMSE sweep");
    rng_cmd->add_option("--scheme", rng.scheme);
    rng_cmd->add_option("--constellation", rng.constellation);
    rng_cmd->add_option("--n", rng.n);
    rng_cmd->add_option("--bandwidth-hz", rng.bandwidth_hz);
    rng_cmd->add_option("--targets", rng.targets);
    rng_cmd->add_option("--snr-db", rng.snr);
    rng_cmd->add_flag("--cp,!--no-cp", rng.cp);
    rng_cmd->add_option("--trials", rng.trials);
    rng_cmd->add_option("--seed", rng.seed);
    rng_cmd->add_option("--out", rng.out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (acf_cmd->parsed()) return run_acf(acf, config);
        if (dop_cmd->parsed()) {
            acf.mode = "doppler";
            return run_acf(acf, config);
        }
        if (eisl_cmd->parsed()) return run_eisl(eisl, config);
        if (mom_cmd->parsed()) return run_moments(mom, config);
        if (opt_cmd->parsed()) return run_optimality(opt, config);
        if (rng_cmd->parsed()) return run_ranging(rng, config);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
