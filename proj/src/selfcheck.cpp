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

#include "relspin/selfcheck.hpp"

#include <algorithm>
#include <cmath>

#include "relspin/chsh.hpp"
#include "relspin/epr.hpp"
#include "relspin/mathcore.hpp"
#include "relspin/spin.hpp"

namespace relspin {

namespace {

CheckSuite finish(std::string name, long cases, double max_error, double tolerance, bool extra_ok = true) {
    return CheckSuite{std::move(name), cases, max_error, tolerance, extra_ok && max_error <= tolerance};
}

CheckSuite oracle_equivalence() {
    RngStream rng(1001);
    double worst = 0.0;
    const long cases = 100000;
    for (long k = 0; k < cases; ++k) {
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const Direction n = random_direction(rng);
        const double beta = rng.next_uniform() * (1.0 - 1e-6);
        const Kinematics kin = Kinematics::from_beta(n, beta);
        worst = std::max(worst, std::abs(correlation_analytic(a, b, kin) - correlation_oracle(a, b, kin)));
    }
    return finish("oracle_equivalence", cases, worst, 1e-12);
}

CheckSuite perpendicular_plane() {
    RngStream rng(1002);
    double worst = 0.0;
    long cases = 0;
    for (int k = 0; k < 1000; ++k) {
        const Direction n = random_direction(rng);
        const Direction a = random_perpendicular(n, rng);
        const Direction b = random_perpendicular(n, rng);
        for (int g = 0; g < 100; ++g) {
            const Kinematics kin = Kinematics::from_beta(n, g / 100.0);
            worst = std::max(worst, std::abs(correlation_analytic(a, b, kin) + dot(a, b)));
            ++cases;
        }
    }
    return finish("perpendicular_plane", cases, worst, 1e-12);
}

CheckSuite ultrarelativistic_sign() {
    RngStream rng(1003);
    double worst = 0.0;
    long cases = 0;
    while (cases < 1000) {
        const Direction n = random_direction(rng);
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const double ca = dot(n, a);
        const double cb = dot(n, b);
        if (std::abs(ca) <= kDegeneracyThreshold || std::abs(cb) <= kDegeneracyThreshold) {
            continue;
        }
        const double expected = -std::copysign(1.0, ca) * std::copysign(1.0, cb);
        worst = std::max(worst, std::abs(correlation_analytic(a, b, Kinematics::from_beta(n, 1.0)) - expected));
        ++cases;
    }
    return finish("ultrarelativistic_sign", cases, worst, 0.0);
}

CheckSuite orthogonal_tilt() {
    const Direction n = Direction::unit_z();
    std::vector<double> grid(1000);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = static_cast<double>(k) / 999.0;
    }
    grid.back() = 1.0;
    ScanOptions options;
    options.n = n;
    const ScanTable table = scan_beta(grid, options);
    double worst = 0.0;
    bool rows_ok = true;
    for (const auto &row : table.rows) {
        if (row.status != "ok") {
            rows_ok = false;
            continue;
        }
        const double b2 = row.beta * row.beta;
        const double expected = -b2 / (2.0 - b2);
        worst = std::max({worst, std::abs(row.values[0] - expected), std::abs(row.values[1] - expected)});
    }
    const bool endpoints = rows_ok && table.rows.front().values[0] == 0.0 && table.rows.back().values[0] == -1.0;
    const auto [a, b] = tilted_orthogonal_pair(n);
    const double at_06 = correlation_analytic(a, b, Kinematics::from_beta(n, 0.6));
    const bool reference = std::abs(at_06 - (-0.2195121951)) <= 1e-10;
    return finish("orthogonal_tilt", static_cast<long>(grid.size()) + 1, worst, 1e-12, endpoints && reference);
}

CheckSuite spin_spectrum() {
    RngStream rng(1005);
    double worst = 0.0;
    const long cases = 10000;
    for (long k = 0; k < cases; ++k) {
        const Direction a = random_direction(rng);
        const Direction n = random_direction(rng);
        const Kinematics kin = Kinematics::from_beta(n, rng.next_uniform());
        const auto [lo, hi] = eig2_hermitian(spin_projection_matrix(a, kin).matrix);
        const double half = 0.5 * alpha_norm(a, kin);
        worst = std::max({worst, std::abs(lo + half), std::abs(hi - half)});
    }
    const Kinematics massless = Kinematics::from_beta(Direction::unit_z(), 1.0);
    const auto [lo, hi] = eig2_hermitian(spin_projection_matrix(Direction::unit_x(), massless).matrix);
    return finish("spin_spectrum", cases + 1, worst, 1e-12, lo == 0.0 && hi == 0.0);
}

CheckSuite contraction() {
    double worst = 0.0;
    long cases = 0;
    for (int g = 0; g <= 100; ++g) {
        const double beta = g / 100.0;
        const CommutatorDefects d = commutator_defect(Kinematics::from_beta(Direction::unit_z(), beta));
        const double rate = std::abs(d.transverse - 0.5 * (1.0 - beta * beta));
        worst = std::max({worst, d.d12, d.d23, d.d31, rate});
        ++cases;
    }
    const bool vanishes = commutator_defect(Kinematics::from_beta(Direction::unit_z(), 1.0)).transverse == 0.0;
    return finish("algebra_contraction", cases, worst, 1e-13, vanishes);
}

CheckSuite n_parity() {
    RngStream rng(1009);
    double worst = 0.0;
    const long cases = 10000;
    for (long k = 0; k < cases; ++k) {
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const Direction n = random_direction(rng);
        const double beta = rng.next_uniform() * (1.0 - 1e-6);
        const Kinematics kin = Kinematics::from_beta(n, beta);
        const double e = correlation_analytic(a, b, kin);
        worst = std::max({worst, std::abs(e - correlation_analytic(a, b, kin.with_direction(-n))),
                          std::abs(e - correlation_analytic(a, b, kin, PairGeometry::antiparallel))});
    }
    return finish("n_parity", cases, worst, 1e-15);
}

}  // namespace

std::vector<CheckSuite> run_self_check() {
    return {oracle_equivalence(), perpendicular_plane(), ultrarelativistic_sign(), orthogonal_tilt(),
            spin_spectrum(),      contraction(),         n_parity()};
}

}  // namespace relspin
