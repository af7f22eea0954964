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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "relspin/epr.hpp"
#include "relspin/spin.hpp"

namespace relspin {

/// Polar angle theta from +z and azimuth phi, radians.
struct Angles {
    double theta = 0.0;
    double phi = 0.0;

    auto operator<=>(const Angles &) const = default;
};

/// Settings a, a', b, b' in that order.
struct AngleSet {
    std::array<Angles, 4> settings{};

    const Angles &a() const { return settings[0]; }
    const Angles &a_prime() const { return settings[1]; }
    const Angles &b() const { return settings[2]; }
    const Angles &b_prime() const { return settings[3]; }

    auto operator<=>(const AngleSet &) const = default;
};

/// (sin(theta) cos(phi), sin(theta) sin(phi), cos(theta)).
Direction direction_from_angles(double theta, double phi);

/// Inverse of direction_from_angles with theta in [0, pi], phi in [-pi, pi).
Angles angles_from_direction(const Direction &d);

/// Same direction, with theta reduced to [0, pi] and phi to [-pi, pi); the
/// azimuth is 0 at the poles.
Angles canonical_angles(const Angles &angles);
AngleSet canonical_angles(const AngleSet &angles);

/// |E(a,b) + E(a,b') + E(a',b) - E(a',b')|.
double chsh_value(const AngleSet &angles, const Kinematics &kin);

/// The textbook optimum embedded in the plane perpendicular to n:
/// a = e1, a' = e2, b = (e1 + e2)/sqrt2, b' = (e1 - e2)/sqrt2.
AngleSet perpendicular_plane_settings(const Direction &n);

struct ChshResult {
    double value = 0.0;
    AngleSet angles;
    int restarts_used = 0;       // optimizer runs, including the warm start
    int converged_restarts = 0;  // runs that met the simplex tolerance
    bool converged = false;      // the run that produced the best value
};

struct ChshOptions {
    int restarts = 32;
    std::uint64_t seed = 1;
    double tol = 1e-12;
    int max_iter = 5000;
    /// At beta = 1 every setting must keep |n.a| at or above this value.
    double min_axial_overlap = 0.1;
};

/// Multi-start simplex maximization over the 8 angles, with n fixed.
/// Starts: one deterministic warm start, then `restarts` uniform random
/// settings from RngStream(seed). Throws InvalidArgument if restarts < 1.
ChshResult max_chsh(const Kinematics &kin, const ChshOptions &options = {});

enum class ScanCase {
    tilted_orthogonal,  // a.b = 0, n.a = n.b = 1/sqrt2
    fixed_angles,
    chsh_max,
};

struct ScanOptions {
    ScanCase scan_case = ScanCase::tilted_orthogonal;
    AngleSet angles;  // for fixed_angles
    Direction n;
    ChshOptions chsh;
    PairGeometry geometry = PairGeometry::same_momentum;
};

struct ScanRow {
    double beta = 0.0;
    std::vector<double> values;  // empty when the row is flagged
    std::string status = "ok";
};

struct ScanTable {
    std::vector<std::string> columns;  // "beta" first
    std::vector<ScanRow> rows;
};

/// One row per grid value. Rows that hit a degenerate observable carry the
/// error in `status` and no values; the scan continues. Throws
/// InvalidArgument unless the grid is strictly increasing inside [0, 1].
ScanTable scan_beta(std::span<const double> beta_grid, const ScanOptions &options);

/// Directions a = (e1 + n)/sqrt2 and b = (-e1 + n)/sqrt2 in the helicity
/// frame of n, for which E(beta) = -beta^2 / (2 - beta^2).
std::pair<Direction, Direction> tilted_orthogonal_pair(const Direction &n);

}  // namespace relspin
