// Copyright 2026 The relspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relspin/cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relspin/chsh.hpp"
#include "relspin/epr.hpp"
#include "relspin/errors.hpp"
#include "relspin/selfcheck.hpp"
#include "relspin/spin.hpp"

namespace relspin::cli {

std::string format_fixed(double value, int decimals) {
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    std::string out(buf.data(), res.ptr);
    if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') {
        out.erase(0, 1);
    }
    return out;
}

std::string format_significant(double value, int digits) {
    if (value == 0.0) {
        value = 0.0;
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
    return std::string(buf.data(), res.ptr);
}

namespace {

constexpr int kSingleLineDecimals = 10;
constexpr int kCsvDigits = 12;
constexpr double kDirectionTolerance = 1e-6;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> beta;
    std::optional<double> mass;
    std::optional<double> p;
    std::string n = "0,0,1";
    std::optional<std::string> n_angles;
    std::optional<std::string> a, a_angles, b, b_angles;
    bool antiparallel = false;
    std::uint64_t seed = 1;
    std::string out;

    // correlate
    std::optional<double> p_sigma;
    int order = 16;
    // scan
    std::string scan_case = "eq16";
    std::optional<double> beta_min, beta_max;
    std::optional<int> steps;
    std::optional<std::string> angles;
    // chsh
    int restarts = 32;
    double tol = 1e-12;
    // mc
    std::int64_t samples = 1000000;
};

std::vector<double> parse_numbers(const std::string &text, std::size_t expected, const std::string &flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char *first = item.data();
        const char *last = item.data() + item.size();
        while (first < last && *first == ' ') ++first;
        if (first < last && *first == '+') ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
            throw UsageError(flag + ": '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.size() != expected) {
        throw UsageError(flag + ": expected " + std::to_string(expected) + " comma-separated values");
    }
    return values;
}

double degrees(double deg) { return deg * std::numbers::pi / 180.0; }

Direction parse_direction(const std::optional<std::string> &cartesian, const std::optional<std::string> &angles,
                          const std::string &name) {
    if (cartesian && angles) {
        throw UsageError("give either --" + name + " or --" + name + "-angles, not both");
    }
    if (angles) {
        const auto v = parse_numbers(*angles, 2, "--" + name + "-angles");
        return direction_from_angles(degrees(v[0]), degrees(v[1]));
    }
    if (!cartesian) {
        throw UsageError("missing --" + name);
    }
    const auto v = parse_numbers(*cartesian, 3, "--" + name);
    const Vec3 raw{v[0], v[1], v[2]};
    if (std::abs(norm(raw) - 1.0) > kDirectionTolerance) {
        throw UsageError("--" + name + " is not a unit vector (norm " + format_significant(norm(raw), 8) + ")");
    }
    return Direction::normalized(raw);
}

Kinematics parse_kinematics(const RunConfig &cfg, const Direction &n) {
    const bool has_beta = cfg.beta.has_value();
    const bool has_mass = cfg.mass.has_value();
    const bool has_p = cfg.p.has_value();
    if (has_beta == (has_mass || has_p)) {
        throw UsageError("give exactly one of --beta or --mass with --p");
    }
    if (has_beta) {
        if (!(*cfg.beta >= 0.0 && *cfg.beta <= 1.0)) {
            throw UsageError("--beta must lie in [0, 1]");
        }
        return Kinematics::from_beta(n, *cfg.beta);
    }
    if (!has_mass || !has_p) {
        throw UsageError("--mass and --p must be given together");
    }
    if (!(*cfg.mass > 0.0) || !(*cfg.p >= 0.0)) {
        throw UsageError("--mass must be positive and --p non-negative");
    }
    return Kinematics::from_momentum(n, *cfg.mass, *cfg.p);
}

PairGeometry geometry_of(const RunConfig &cfg) {
    return cfg.antiparallel ? PairGeometry::antiparallel : PairGeometry::same_momentum;
}

void note_antiparallel(const RunConfig &cfg, std::ostream &err) {
    if (cfg.antiparallel) {
        err << "note: particle 2 uses n2 = -n; the spin map depends on n only through (n.a)n, so the "
               "correlation equals the same-momentum result\n";
    }
}

int run_correlate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Direction n = parse_direction(cfg.n, cfg.n_angles, "n");
    const Direction a = parse_direction(cfg.a, cfg.a_angles, "a");
    const Direction b = parse_direction(cfg.b, cfg.b_angles, "b");
    if (cfg.p_sigma) {
        if (!cfg.mass || !cfg.p || cfg.beta) {
            throw UsageError("--p-sigma needs --mass and --p");
        }
        if (cfg.antiparallel) {
            throw UsageError("--p-sigma does not support --antiparallel");
        }
        if (!(*cfg.p_sigma > 0.0)) {
            throw UsageError("--p-sigma must be positive");
        }
        PacketSpec spec{*cfg.mass, *cfg.p, *cfg.p_sigma, n, cfg.order};
        const PacketAverage avg = packet_average(a, b, spec);
        out << format_fixed(avg.value, kSingleLineDecimals) << "\n";
        if (avg.clamped) {
            err << "warning: negative momenta at some quadrature nodes were clamped to 0\n";
        }
        if (avg.broad_packet) {
            err << "warning: packet width is not small compared with the mean momentum\n";
        }
        return kOk;
    }
    const Kinematics kin = parse_kinematics(cfg, n);
    note_antiparallel(cfg, err);
    out << format_fixed(correlation_analytic(a, b, kin, geometry_of(cfg)), kSingleLineDecimals) << "\n";
    return kOk;
}

void write_csv(const ScanTable &table, std::ostream &out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << table.columns[i] << ',';
    }
    out << "status\n";
    for (const auto &row : table.rows) {
        out << format_significant(row.beta, kCsvDigits);
        for (std::size_t i = 1; i < table.columns.size(); ++i) {
            out << ',';
            if (i - 1 < row.values.size()) {
                out << format_significant(row.values[i - 1], kCsvDigits);
            }
        }
        out << ',' << row.status << '\n';
    }
}

int run_scan(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (!cfg.beta_min || !cfg.beta_max || !cfg.steps) {
        throw UsageError("scan needs --beta-min, --beta-max and --steps");
    }
    const double lo = *cfg.beta_min;
    const double hi = *cfg.beta_max;
    const int steps = *cfg.steps;
    if (!(lo >= 0.0) || !(hi <= 1.0) || steps < 1 || (steps == 1 && lo != hi) || (steps > 1 && !(lo < hi))) {
        throw UsageError("bad grid: need 0 <= beta-min < beta-max <= 1 and steps >= 2");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        grid[k] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    grid.back() = hi;

    ScanOptions options;
    options.n = parse_direction(cfg.n, cfg.n_angles, "n");
    options.geometry = geometry_of(cfg);
    options.chsh.restarts = cfg.restarts;
    options.chsh.seed = cfg.seed;
    options.chsh.tol = cfg.tol;
    if (cfg.scan_case == "eq16") {
        options.scan_case = ScanCase::tilted_orthogonal;
    } else if (cfg.scan_case == "fixed") {
        options.scan_case = ScanCase::fixed_angles;
        if (!cfg.angles) {
            throw UsageError("--case fixed needs --angles ta,pa,ta',pa',tb,pb,tb',pb' in degrees");
        }
        const auto v = parse_numbers(*cfg.angles, 8, "--angles");
        for (std::size_t i = 0; i < 4; ++i) {
            options.angles.settings[i] = Angles{degrees(v[2 * i]), degrees(v[2 * i + 1])};
        }
    } else if (cfg.scan_case == "chsh") {
        options.scan_case = ScanCase::chsh_max;
    } else {
        throw UsageError("--case must be eq16, fixed or chsh");
    }
    if (options.scan_case == ScanCase::chsh_max && cfg.antiparallel) {
        throw UsageError("--case chsh does not support --antiparallel");
    }
    note_antiparallel(cfg, err);
    write_csv(scan_beta(grid, options), out);
    return kOk;
}

int run_chsh(const RunConfig &cfg, std::ostream &out, std::ostream &) {
    const Direction n = parse_direction(cfg.n, cfg.n_angles, "n");
    const Kinematics kin = parse_kinematics(cfg, n);
    if (cfg.restarts < 1) {
        throw UsageError("--restarts must be at least 1");
    }
    ChshOptions options;
    options.restarts = cfg.restarts;
    options.seed = cfg.seed;
    options.tol = cfg.tol;
    const ChshResult result = max_chsh(kin, options);
    out << "value=" << format_fixed(result.value, kSingleLineDecimals) << "\n";
    out << "angles=";
    for (std::size_t i = 0; i < 4; ++i) {
        const auto &s = result.angles.settings[i];
        out << (i == 0 ? "" : ",") << format_significant(s.theta, kCsvDigits) << ','
            << format_significant(s.phi, kCsvDigits);
    }
    out << "\n";
    out << "restarts=" << result.restarts_used << "\n";
    out << "converged_restarts=" << result.converged_restarts << "\n";
    out << "converged=" << (result.converged ? "true" : "false") << "\n";
    return result.converged_restarts == 0 ? kNotConverged : kOk;
}

int run_mc(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Direction n = parse_direction(cfg.n, cfg.n_angles, "n");
    const Direction a = parse_direction(cfg.a, cfg.a_angles, "a");
    const Direction b = parse_direction(cfg.b, cfg.b_angles, "b");
    const Kinematics kin = parse_kinematics(cfg, n);
    if (cfg.samples < 100) {
        throw UsageError("--samples must be at least 100");
    }
    note_antiparallel(cfg, err);
    const McEstimate est = mc_estimate(a, b, kin, cfg.samples, cfg.seed, geometry_of(cfg));
    out << "E_hat=" << format_fixed(est.mean, kSingleLineDecimals) << "\n";
    out << "stderr=" << format_fixed(est.std_error, kSingleLineDecimals) << "\n";
    out << "samples=" << est.samples << "\n";
    out << "seed=" << est.seed << "\n";
    out << "E_analytic=" << format_fixed(correlation_analytic(a, b, kin, geometry_of(cfg)), kSingleLineDecimals)
        << "\n";
    return kOk;
}

int run_check(const RunConfig &, std::ostream &out, std::ostream &) {
    const auto suites = run_self_check();
    bool all = true;
    out << "suite,cases,max_error,tolerance,result\n";
    for (const auto &s : suites) {
        out << s.name << ',' << s.cases << ',' << format_significant(s.max_error, 6) << ','
            << format_significant(s.tolerance, 6) << ',' << (s.passed ? "pass" : "FAIL") << "\n";
        all = all && s.passed;
    }
    out << (all ? "all suites passed" : "some suites FAILED") << "\n";
    return all ? kOk : kCheckFailed;
}

void add_kinematics(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--beta", cfg.beta, "speed in units of c, in [0, 1]");
    sub->add_option("--mass", cfg.mass, "rest mass (natural units)");
    sub->add_option("--p", cfg.p, "momentum magnitude (natural units)");
}

void add_axis(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--n", cfg.n, "momentum direction x,y,z")->capture_default_str();
    sub->add_option("--n-angles", cfg.n_angles, "momentum direction theta,phi in degrees");
    sub->add_flag("--antiparallel", cfg.antiparallel, "second particle moves along -n");
}

void add_settings(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--a", cfg.a, "first measurement axis x,y,z");
    sub->add_option("--a-angles", cfg.a_angles, "first measurement axis theta,phi in degrees");
    sub->add_option("--b", cfg.b, "second measurement axis x,y,z");
    sub->add_option("--b-angles", cfg.b_angles, "second measurement axis theta,phi in degrees");
}

void add_output(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--out", cfg.out, "write results to this file instead of standard output");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Relativistic EPR-Bohm spin correlations for massive spin-1/2 pairs", "relspin"};
    app.require_subcommand(1);

    auto *correlate = app.add_subcommand("correlate", "singlet correlation E(a, b) at one momentum");
    add_kinematics(correlate, cfg);
    add_axis(correlate, cfg);
    add_settings(correlate, cfg);
    correlate->add_option("--p-sigma", cfg.p_sigma, "momentum spread; averages E over a Gaussian packet");
    correlate->add_option("--order", cfg.order, "Gauss-Hermite order for --p-sigma")->capture_default_str();
    add_output(correlate, cfg);

    auto *scan = app.add_subcommand("scan", "CSV table over a beta grid");
    scan->add_option("--case", cfg.scan_case, "eq16 | fixed | chsh")->capture_default_str();
    scan->add_option("--beta-min", cfg.beta_min, "first grid value");
    scan->add_option("--beta-max", cfg.beta_max, "last grid value");
    scan->add_option("--steps", cfg.steps, "number of grid points");
    scan->add_option("--angles", cfg.angles, "fixed case: ta,pa,ta',pa',tb,pb,tb',pb' in degrees");
    scan->add_option("--restarts", cfg.restarts, "chsh case: random restarts per row")->capture_default_str();
    scan->add_option("--seed", cfg.seed, "chsh case: restart seed")->capture_default_str();
    scan->add_option("--tol", cfg.tol, "chsh case: simplex tolerance")->capture_default_str();
    add_axis(scan, cfg);
    add_output(scan, cfg);

    auto *chsh = app.add_subcommand("chsh", "maximize the CHSH functional at fixed beta");
    add_kinematics(chsh, cfg);
    add_axis(chsh, cfg);
    chsh->add_option("--restarts", cfg.restarts, "random restarts")->capture_default_str();
    chsh->add_option("--seed", cfg.seed, "restart seed")->capture_default_str();
    chsh->add_option("--tol", cfg.tol, "simplex tolerance")->capture_default_str();
    add_output(chsh, cfg);

    auto *mc = app.add_subcommand("mc", "Monte Carlo estimate of E(a, b)");
    add_kinematics(mc, cfg);
    add_axis(mc, cfg);
    add_settings(mc, cfg);
    mc->add_option("--samples", cfg.samples, "number of outcome pairs")->capture_default_str();
    mc->add_option("--seed", cfg.seed, "stream seed")->capture_default_str();
    add_output(mc, cfg);

    auto *check = app.add_subcommand("check", "run the property self-check suites");
    add_output(check, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    using Handler = std::function<int(const RunConfig &, std::ostream &, std::ostream &)>;
    Handler handler;
    if (correlate->parsed()) handler = run_correlate;
    if (scan->parsed()) handler = run_scan;
    if (chsh->parsed()) handler = run_chsh;
    if (mc->parsed()) handler = run_mc;
    if (check->parsed()) handler = run_check;

    std::ostringstream buffer;
    int code = kOk;
    try {
        code = handler(cfg, buffer, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateObservable &e) {
        err << "error: degenerate observable: " << e.what() << "\n";
        return kDegenerate;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    if (cfg.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out << "\n";
            return kUsage;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace relspin::cli
