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

#include "relspin/chsh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relspin/errors.hpp"

namespace relspin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_azimuth(double phi) {
    // [-pi, pi)
    double out = phi - kTwoPi * std::floor((phi + kPi) / kTwoPi);
    if (out >= kPi) {
        out -= kTwoPi;
    }
    return out;
}

std::array<Direction, 4> settings_directions(const AngleSet &angles) {
    std::array<Direction, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = direction_from_angles(angles.settings[i].theta, angles.settings[i].phi);
    }
    return out;
}

AngleSet angles_of(const std::array<Direction, 4> &dirs) {
    AngleSet out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.settings[i] = angles_from_direction(dirs[i]);
    }
    return out;
}

AngleSet unpack(std::span<const double> x) {
    AngleSet out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.settings[i] = Angles{x[2 * i], x[2 * i + 1]};
    }
    return out;
}

std::vector<double> pack(const AngleSet &angles) {
    std::vector<double> x;
    x.reserve(8);
    for (const auto &s : angles.settings) {
        x.push_back(s.theta);
        x.push_back(s.phi);
    }
    return x;
}

}  // namespace

Direction direction_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return Direction::normalized({st * std::cos(phi), st * std::sin(phi), std::cos(theta)});
}

Angles angles_from_direction(const Direction &d) {
    const double rho = std::hypot(d.x(), d.y());
    const double theta = std::atan2(rho, d.z());
    const double phi = rho == 0.0 ? 0.0 : wrap_azimuth(std::atan2(d.y(), d.x()));
    return Angles{theta, phi};
}

Angles canonical_angles(const Angles &angles) {
    double theta = std::fmod(angles.theta, kTwoPi);
    if (theta < 0.0) {
        theta += kTwoPi;
    }
    double phi = angles.phi;
    if (theta > kPi) {
        // (theta, phi) and (2 pi - theta, phi + pi) name the same direction.
        theta = kTwoPi - theta;
        phi += kPi;
    }
    phi = wrap_azimuth(phi);
    if (theta == 0.0 || theta == kPi) {
        phi = 0.0;
    }
    return Angles{theta, phi};
}

AngleSet canonical_angles(const AngleSet &angles) {
    AngleSet out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.settings[i] = canonical_angles(angles.settings[i]);
    }
    return out;
}

double chsh_value(const AngleSet &angles, const Kinematics &kin) {
    const auto [a, ap, b, bp] = settings_directions(angles);
    const double sum = correlation_analytic(a, b, kin) + correlation_analytic(a, bp, kin) +
                       correlation_analytic(ap, b, kin) - correlation_analytic(ap, bp, kin);
    return std::abs(sum);
}

AngleSet perpendicular_plane_settings(const Direction &n) {
    const HelicityFrame frame(n);
    const double h = 1.0 / std::numbers::sqrt2;
    return angles_of({Direction::normalized(frame.e1), Direction::normalized(frame.e2),
                      Direction::normalized(h * frame.e1 + h * frame.e2),
                      Direction::normalized(h * frame.e1 - h * frame.e2)});
}

std::pair<Direction, Direction> tilted_orthogonal_pair(const Direction &n) {
    const HelicityFrame frame(n);
    const double h = 1.0 / std::numbers::sqrt2;
    return {Direction::normalized(h * frame.e1 + h * frame.e3), Direction::normalized(h * frame.e3 - h * frame.e1)};
}

ChshResult max_chsh(const Kinematics &kin, const ChshOptions &options) {
    if (options.restarts < 1) {
        throw InvalidArgument("max_chsh: restarts must be at least 1");
    }
    const bool massless_limit = kin.one_minus_beta_sq() == 0.0;
    const Direction &n = kin.n();

    auto admissible = [&](const Direction &d) {
        if (massless_limit) {
            return std::abs(dot(n, d)) >= options.min_axial_overlap;
        }
        return alpha_norm(d, kin) > kDegeneracyThreshold;
    };

    // Inadmissible settings score +1, worse than any admissible -S <= 0.
    const Objective objective = [&](std::span<const double> x) -> double {
        const AngleSet angles = unpack(x);
        for (const auto &d : settings_directions(angles)) {
            if (!admissible(d)) {
                return 1.0;
            }
        }
        try {
            return -chsh_value(angles, kin);
        } catch (const DegenerateObservable &) {
            return 1.0;
        }
    };

    std::vector<AngleSet> starts;
    starts.reserve(static_cast<std::size_t>(options.restarts) + 1);
    if (massless_limit) {
        // Perpendicular directions are degenerate here; tilt the textbook
        // settings 45 degrees toward n.
        const HelicityFrame frame(n);
        std::array<Direction, 4> dirs;
        const std::array<double, 4> azimuth{0.0, kPi / 2.0, kPi / 4.0, -kPi / 4.0};
        for (std::size_t i = 0; i < 4; ++i) {
            dirs[i] = Direction::normalized(std::cos(azimuth[i]) * frame.e1 + std::sin(azimuth[i]) * frame.e2 +
                                            frame.e3);
        }
        starts.push_back(angles_of(dirs));
    } else {
        starts.push_back(perpendicular_plane_settings(n));
    }

    RngStream rng(options.seed);
    for (int r = 0; r < options.restarts; ++r) {
        std::array<Direction, 4> dirs;
        for (auto &d : dirs) {
            do {
                d = random_direction(rng);
            } while (!admissible(d));
        }
        starts.push_back(angles_of(dirs));
    }

    MinimizeOptions nm;
    nm.tol = options.tol;
    nm.max_iter = options.max_iter;
    nm.initial_step = 0.3;

    ChshResult best;
    bool have_best = false;
    for (const AngleSet &start : starts) {
        const std::vector<double> x0 = pack(start);
        const MinimizeResult run = minimize(objective, x0, nm);
        ++best.restarts_used;
        if (run.converged) {
            ++best.converged_restarts;
        }
        if (run.value > 0.0) {
            continue;
        }
        const double value = -run.value;
        const AngleSet angles = canonical_angles(unpack(run.x));
        if (!have_best || value > best.value || (value == best.value && angles < best.angles)) {
            best.value = value;
            best.angles = angles;
            best.converged = run.converged;
            have_best = true;
        }
    }
    return best;
}

ScanTable scan_beta(std::span<const double> beta_grid, const ScanOptions &options) {
    if (beta_grid.empty()) {
        throw InvalidArgument("scan_beta: empty grid");
    }
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        const double beta = beta_grid[i];
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw InvalidArgument("scan_beta: grid values must lie in [0, 1]");
        }
        if (i > 0 && !(beta > beta_grid[i - 1])) {
            throw InvalidArgument("scan_beta: grid must be strictly increasing");
        }
    }

    ScanTable table;
    switch (options.scan_case) {
        case ScanCase::tilted_orthogonal:
            table.columns = {"beta", "E_analytic", "E_oracle"};
            break;
        case ScanCase::fixed_angles:
            table.columns = {"beta", "E_ab", "E_abp", "E_apb", "E_apbp", "S"};
            break;
        case ScanCase::chsh_max:
            table.columns = {"beta",    "S_max",    "theta_a", "phi_a",    "theta_ap",  "phi_ap",
                             "theta_b", "phi_b",    "theta_bp", "phi_bp", "converged"};
            break;
    }

    const auto [tilt_a, tilt_b] = tilted_orthogonal_pair(options.n);
    for (const double beta : beta_grid) {
        ScanRow row;
        row.beta = beta;
        const Kinematics kin = Kinematics::from_beta(options.n, beta);
        try {
            switch (options.scan_case) {
                case ScanCase::tilted_orthogonal:
                    row.values = {correlation_analytic(tilt_a, tilt_b, kin, options.geometry),
                                  correlation_oracle(tilt_a, tilt_b, kin, options.geometry)};
                    break;
                case ScanCase::fixed_angles: {
                    const auto [a, ap, b, bp] = settings_directions(options.angles);
                    const double e_ab = correlation_analytic(a, b, kin, options.geometry);
                    const double e_abp = correlation_analytic(a, bp, kin, options.geometry);
                    const double e_apb = correlation_analytic(ap, b, kin, options.geometry);
                    const double e_apbp = correlation_analytic(ap, bp, kin, options.geometry);
                    row.values = {e_ab, e_abp, e_apb, e_apbp, std::abs(e_ab + e_abp + e_apb - e_apbp)};
                    break;
                }
                case ScanCase::chsh_max: {
                    const ChshResult result = max_chsh(kin, options.chsh);
                    row.values.push_back(result.value);
                    for (const auto &s : result.angles.settings) {
                        row.values.push_back(s.theta);
                        row.values.push_back(s.phi);
                    }
                    row.values.push_back(result.converged ? 1.0 : 0.0);
                    if (result.converged_restarts == 0) {
                        row.status = "not_converged";
                    }
                    break;
                }
            }
        } catch (const DegenerateObservable &) {
            row.values.clear();
            row.status = "degenerate";
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace relspin
