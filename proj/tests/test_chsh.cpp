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

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "relspin/chsh.hpp"
#include "relspin/errors.hpp"

using namespace relspin;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::numbers::sqrt2;

double deg(double d) { return d * kPi / 180.0; }

// a = 0, a' = 90, b = 45, b' = -45 degrees of azimuth on the equator.
AngleSet equatorial_optimum() {
    AngleSet s;
    s.settings = {Angles{kPi / 2, 0.0}, Angles{kPi / 2, deg(90)}, Angles{kPi / 2, deg(45)}, Angles{kPi / 2, deg(-45)}};
    return s;
}

double chsh_via_oracle(const AngleSet &s, const Kinematics &kin) {
    const Direction a = direction_from_angles(s.a().theta, s.a().phi);
    const Direction ap = direction_from_angles(s.a_prime().theta, s.a_prime().phi);
    const Direction b = direction_from_angles(s.b().theta, s.b().phi);
    const Direction bp = direction_from_angles(s.b_prime().theta, s.b_prime().phi);
    return std::abs(correlation_oracle(a, b, kin) + correlation_oracle(a, bp, kin) + correlation_oracle(ap, b, kin) -
                    correlation_oracle(ap, bp, kin));
}

}  // namespace

TEST_CASE("direction_from_angles") {
    for (double phi : {0.0, 1.3, -2.9}) {
        const Direction d = direction_from_angles(0.0, phi);
        CHECK(d.vec() == Vec3{0.0, 0.0, 1.0});
    }
    const Direction x = direction_from_angles(kPi / 2, 0.0);
    CHECK(norm(x.vec() - Vec3{1.0, 0.0, 0.0}) <= 1e-15);
    const Direction diag = direction_from_angles(kPi / 4, 0.0);
    CHECK(norm(diag.vec() - Vec3{1.0 / std::numbers::sqrt2, 0.0, 1.0 / std::numbers::sqrt2}) <= 1e-15);
    CHECK(std::abs(norm(diag.vec()) - 1.0) <= 1e-15);
}

TEST_CASE("canonical_angles names the same direction") {
    RngStream rng(41);
    for (int k = 0; k < 2000; ++k) {
        const Angles raw{20.0 * rng.next_uniform() - 10.0, 20.0 * rng.next_uniform() - 10.0};
        const Angles c = canonical_angles(raw);
        CHECK(c.theta >= 0.0);
        CHECK(c.theta <= kPi);
        CHECK(c.phi >= -kPi);
        CHECK(c.phi < kPi);
        const Vec3 before = direction_from_angles(raw.theta, raw.phi).vec();
        const Vec3 after = direction_from_angles(c.theta, c.phi).vec();
        CHECK(norm(before - after) <= 1e-12);
        CHECK(canonical_angles(c) == c);
    }
    CHECK(canonical_angles(Angles{0.0, 2.0}) == Angles{0.0, 0.0});
}

TEST_CASE("chsh_value examples") {
    const Direction z = Direction::unit_z();
    const AngleSet opt = equatorial_optimum();
    const Kinematics rest = Kinematics::from_beta(z, 0.0);
    CHECK(std::abs(chsh_value(opt, rest) - kTsirelson) <= 1e-12);
    CHECK(std::abs(chsh_via_oracle(opt, rest) - kTsirelson) <= 1e-12);
    CHECK(std::abs(chsh_value(opt, Kinematics::from_beta(z, 0.9)) - kTsirelson) <= 1e-12);

    AngleSet same;
    same.settings.fill(Angles{0.7, 0.2});
    CHECK(std::abs(chsh_value(same, rest) - 2.0) <= 1e-12);
}

TEST_CASE("chsh_value perpendicular settings do not depend on beta") {
    RngStream rng(42);
    const Direction z = Direction::unit_z();
    for (int k = 0; k < 200; ++k) {
        AngleSet s;
        for (auto &a : s.settings) a = Angles{kPi / 2, 2.0 * kPi * rng.next_uniform()};
        const double rest = chsh_value(s, Kinematics::from_beta(z, 0.0));
        for (double beta : {0.2, 0.7, 0.95, 0.999999}) {
            CHECK(std::abs(chsh_value(s, Kinematics::from_beta(z, beta)) - rest) <= 1e-12);
        }
    }
}

TEST_CASE("chsh_value never exceeds the Tsirelson bound") {
    RngStream rng(43);
    for (int k = 0; k < 20000; ++k) {
        const Kinematics kin = Kinematics::from_beta(random_direction(rng), rng.next_uniform() * (1.0 - 1e-9));
        AngleSet s;
        for (auto &a : s.settings) a = Angles{kPi * rng.next_uniform(), 2.0 * kPi * rng.next_uniform() - kPi};
        CHECK(chsh_value(s, kin) <= kTsirelson + 1e-9);
    }
}

TEST_CASE("chsh_value at beta = 1 is a sign sum") {
    RngStream rng(44);
    const Direction n = random_direction(rng);
    const Kinematics kin = Kinematics::from_beta(n, 1.0);
    for (int k = 0; k < 2000; ++k) {
        AngleSet s;
        for (auto &a : s.settings) {
            Direction d = random_direction(rng);
            while (std::abs(dot(d, n)) < 0.1) d = random_direction(rng);
            a = angles_from_direction(d);
        }
        CHECK(chsh_value(s, kin) == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("max_chsh reaches the expected optimum") {
    const Direction z = Direction::unit_z();
    for (double beta : {0.0, 0.99}) {
        CAPTURE(beta);
        const ChshResult r = max_chsh(Kinematics::from_beta(z, beta));
        CHECK(std::abs(r.value - kTsirelson) <= 1e-6);
        CHECK(r.restarts_used == 33);
        CHECK(r.converged_restarts >= 1);
        CHECK(std::abs(chsh_value(r.angles, Kinematics::from_beta(z, beta)) - r.value) <= 1e-12);
    }
    const ChshResult massless = max_chsh(Kinematics::from_beta(z, 1.0));
    CHECK(std::abs(massless.value - 2.0) <= 1e-6);
    for (const auto &s : massless.angles.settings) {
        CHECK(std::abs(direction_from_angles(s.theta, s.phi).z()) >= 0.1);
    }
}

TEST_CASE("max_chsh on a tilted momentum axis") {
    RngStream rng(45);
    const Direction n = random_direction(rng);
    ChshOptions options;
    options.restarts = 4;
    const ChshResult r = max_chsh(Kinematics::from_beta(n, 0.5), options);
    CHECK(std::abs(r.value - kTsirelson) <= 1e-6);
}

TEST_CASE("max_chsh is deterministic and sound") {
    const Kinematics kin = Kinematics::from_beta(Direction::unit_z(), 0.7);
    ChshOptions options;
    options.restarts = 6;
    options.seed = 99;
    const ChshResult a = max_chsh(kin, options);
    const ChshResult b = max_chsh(kin, options);
    CHECK(a.value == b.value);
    CHECK(a.angles == b.angles);
    CHECK(a.converged == b.converged);

    RngStream rng(46);
    for (int k = 0; k < 500; ++k) {
        AngleSet s;
        for (auto &x : s.settings) x = Angles{kPi * rng.next_uniform(), 2.0 * kPi * rng.next_uniform() - kPi};
        CHECK(a.value >= chsh_value(s, kin) - options.tol);
    }
    CHECK(a.value >= chsh_value(equatorial_optimum(), kin) - options.tol);

    options.restarts = 0;
    CHECK_THROWS_AS(max_chsh(kin, options), InvalidArgument);
}

TEST_CASE("scan_beta tilted orthogonal case") {
    const std::vector<double> grid{0.0, 0.6, 1.0};
    const ScanTable t = scan_beta(grid, ScanOptions{});
    CHECK(t.columns == std::vector<std::string>{"beta", "E_analytic", "E_oracle"});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].values[0] == 0.0);
    CHECK(t.rows[2].values[0] == -1.0);
    CHECK(std::abs(t.rows[2].values[1] + 1.0) <= 1e-12);
    CHECK(std::abs(t.rows[1].values[0] + 0.2195121951219512) <= 1e-12);
    CHECK(std::abs(t.rows[1].values[1] + 0.2195121951219512) <= 1e-12);
}

TEST_CASE("scan_beta flags degenerate rows and keeps going") {
    ScanOptions options;
    options.scan_case = ScanCase::fixed_angles;
    options.angles = equatorial_optimum();
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const ScanTable t = scan_beta(grid, options);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].status == "ok");
    CHECK(std::abs(t.rows[1].values.back() - kTsirelson) <= 1e-12);
    CHECK(t.rows[2].status == "degenerate");
    CHECK(t.rows[2].values.empty());
}

TEST_CASE("scan_beta chsh_max rows") {
    ScanOptions options;
    options.scan_case = ScanCase::chsh_max;
    options.chsh.restarts = 8;
    const std::vector<double> grid{0.0, 0.5};
    const ScanTable t = scan_beta(grid, options);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.columns.size() == 11);
    for (const auto &row : t.rows) {
        CHECK(row.values.size() == 10);
        CHECK(std::abs(row.values[0] - kTsirelson) <= 1e-6);
    }
}

TEST_CASE("scan_beta rejects bad grids") {
    const std::vector<double> decreasing{0.5, 0.2};
    const std::vector<double> repeated{0.2, 0.2};
    const std::vector<double> outside{0.2, 1.2};
    CHECK_THROWS_AS(scan_beta(decreasing, ScanOptions{}), InvalidArgument);
    CHECK_THROWS_AS(scan_beta(repeated, ScanOptions{}), InvalidArgument);
    CHECK_THROWS_AS(scan_beta(outside, ScanOptions{}), InvalidArgument);
    CHECK_THROWS_AS(scan_beta(std::vector<double>{}, ScanOptions{}), InvalidArgument);
}
