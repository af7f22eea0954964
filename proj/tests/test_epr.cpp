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

#include <cmath>
#include <numbers>

#include "relspin/chsh.hpp"
#include "relspin/epr.hpp"
#include "relspin/errors.hpp"

using namespace relspin;

namespace {

const double kH = 1.0 / std::numbers::sqrt2;
const Direction kTiltA(kH, 0.0, kH);
const Direction kTiltB(-kH, 0.0, kH);
constexpr double kTiltAt06 = -0.36 / 1.64;

double tilt_closed_form(double beta) { return -beta * beta / (2.0 - beta * beta); }

// Random SU(2) element from a random unit quaternion.
ComplexMatrix2 random_unitary(RngStream &rng) {
    double q[4];
    double len = 0.0;
    for (double &c : q) {
        c = 2.0 * rng.next_uniform() - 1.0;
        len += c * c;
    }
    len = std::sqrt(len);
    for (double &c : q) c /= len;
    ComplexMatrix2 u;
    u(0, 0) = Complex(q[0], q[1]);
    u(0, 1) = Complex(q[2], q[3]);
    u(1, 0) = Complex(-q[2], q[3]);
    u(1, 1) = Complex(q[0], -q[1]);
    return u;
}

StateVector4 act_on(const ComplexMatrix4 &m, const StateVector4 &v) {
    StateVector4 out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace

TEST_CASE("singlet_state") {
    const StateVector4 psi = singlet_state().vector;
    CHECK(std::abs(state_norm_squared(psi) - 1.0) <= 1e-15);
    // Swapping the tensor factors exchanges |+,-> and |-,+>.
    const StateVector4 swapped{psi[0], psi[2], psi[1], psi[3]};
    for (std::size_t i = 0; i < 4; ++i) CHECK(swapped[i] == -psi[i]);
    CHECK(expectation(psi, kron2(pauli::z(), pauli::z())) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("singlet is invariant under a shared basis change") {
    RngStream rng(31);
    const StateVector4 psi = singlet_state().vector;
    for (int k = 0; k < 100; ++k) {
        const ComplexMatrix2 u = random_unitary(rng);
        const StateVector4 rotated = act_on(kron2(u, u), psi);
        // overlap must be a pure phase
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(psi[i]) * rotated[i];
        CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-12);
    }
}

TEST_CASE("binary_observable") {
    const Direction z = Direction::unit_z();
    const BinaryObservable helicity = binary_observable(z, Kinematics::from_beta(z, 0.9));
    CHECK(norm(helicity.unit_alpha.vec() - z.vec()) <= 1e-15);
    CHECK(std::abs(helicity.matrix(0, 0) - Complex(1.0)) <= 1e-15);

    const BinaryObservable transverse = binary_observable(Direction::unit_x(), Kinematics::from_beta(z, 0.6));
    CHECK(norm(transverse.unit_alpha.vec() - Vec3{1.0, 0.0, 0.0}) <= 1e-15);

    CHECK_THROWS_AS(binary_observable(Direction::unit_x(), Kinematics::from_beta(z, 1.0)), DegenerateObservable);
}

TEST_CASE("binary_observable is an involution with zero trace") {
    RngStream rng(32);
    for (int k = 0; k < 2000; ++k) {
        const Kinematics kin = Kinematics::from_beta(random_direction(rng), rng.next_uniform() * (1.0 - 1e-6));
        const BinaryObservable obs = binary_observable(random_direction(rng), kin);
        const ComplexMatrix2 sq = obs.matrix * obs.matrix;
        CHECK(norm_inf(sq - ComplexMatrix2::identity()) <= 1e-12);
        CHECK(std::abs(obs.matrix.trace()) <= 1e-12);
        const auto [lo, hi] = eig2_hermitian(obs.matrix);
        CHECK(std::abs(lo + 1.0) <= 1e-12);
        CHECK(std::abs(hi - 1.0) <= 1e-12);
    }
}

TEST_CASE("correlation_analytic special cases") {
    const Direction z = Direction::unit_z();
    for (double beta : {0.0, 0.3, 0.9, 0.999999}) {
        CHECK(correlation_analytic(Direction::unit_x(), Direction::unit_x(), Kinematics::from_beta(z, beta)) ==
              doctest::Approx(-1.0).epsilon(1e-15));
    }

    const Kinematics massless = Kinematics::from_beta(z, 1.0);
    const Direction up_a = Direction::normalized({0.3, -0.2, 0.5});
    const Direction up_b = Direction::normalized({-0.7, 0.1, 0.2});
    const Direction down_b = Direction::normalized({-0.7, 0.1, -0.2});
    CHECK(correlation_analytic(up_a, up_b, massless) == -1.0);
    CHECK(correlation_analytic(up_a, down_b, massless) == 1.0);

    CHECK(std::abs(correlation_analytic(kTiltA, kTiltB, Kinematics::from_beta(z, 0.6)) - kTiltAt06) <= 1e-15);
    CHECK_THROWS_AS(correlation_analytic(Direction::unit_x(), up_b, massless), DegenerateObservable);
}

TEST_CASE("correlation_oracle agrees with the closed form") {
    const Direction z = Direction::unit_z();
    CHECK(std::abs(correlation_oracle(Direction::unit_x(), Direction::unit_y(), Kinematics::from_beta(z, 0.0))) <=
          1e-15);
    CHECK(correlation_oracle(Direction::unit_y(), Direction::unit_y(), Kinematics::from_beta(z, 0.0)) ==
          doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(correlation_oracle(kTiltA, kTiltB, Kinematics::from_beta(z, 0.6)) - kTiltAt06) <= 1e-12);

    RngStream rng(33);
    for (int k = 0; k < 20000; ++k) {
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const Kinematics kin = Kinematics::from_beta(random_direction(rng), rng.next_uniform() * (1.0 - 1e-6));
        CHECK(std::abs(correlation_analytic(a, b, kin) - correlation_oracle(a, b, kin)) <= 1e-12);
    }
}

TEST_CASE("correlation properties") {
    RngStream rng(34);
    for (int k = 0; k < 10000; ++k) {
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const Direction n = random_direction(rng);
        const Kinematics kin = Kinematics::from_beta(n, rng.next_uniform() * (1.0 - 1e-6));
        const double e = correlation_analytic(a, b, kin);
        CHECK(e >= -1.0);
        CHECK(e <= 1.0);
        CHECK(e == correlation_analytic(b, a, kin));
        CHECK(e == correlation_analytic(a, b, kin.with_direction(-n)));
        CHECK(e == correlation_analytic(a, b, kin, PairGeometry::antiparallel));
        CHECK(std::abs(correlation_oracle(a, b, kin, PairGeometry::antiparallel) - e) <= 1e-12);
        CHECK(std::abs(correlation_analytic(a, a, kin) + 1.0) <= 1e-12);

        // E = -(alpha_a_hat . alpha_b_hat)
        const Vec3 ua = (1.0 / alpha_norm(a, kin)) * alpha_vector(a, kin);
        const Vec3 ub = (1.0 / alpha_norm(b, kin)) * alpha_vector(b, kin);
        CHECK(std::abs(e + dot(ua, ub)) <= 1e-12);
    }
}

TEST_CASE("perpendicular plane is nonrelativistic") {
    RngStream rng(35);
    for (int k = 0; k < 500; ++k) {
        const Direction n = random_direction(rng);
        const Direction a = random_perpendicular(n, rng);
        const Direction b = random_perpendicular(n, rng);
        for (double beta : {0.0, 0.4, 0.8, 0.99}) {
            CHECK(std::abs(correlation_analytic(a, b, Kinematics::from_beta(n, beta)) + dot(a, b)) <= 1e-12);
        }
    }
}

TEST_CASE("tilted orthogonal pair interpolates between 0 and -1") {
    const Direction z = Direction::unit_z();
    for (int k = 0; k < 1000; ++k) {
        const double beta = k / 999.0;
        const Kinematics kin = Kinematics::from_beta(z, beta);
        CHECK(std::abs(correlation_analytic(kTiltA, kTiltB, kin) - tilt_closed_form(beta)) <= 1e-12);
    }
    CHECK(correlation_analytic(kTiltA, kTiltB, Kinematics::from_beta(z, 0.0)) == 0.0);
    CHECK(correlation_analytic(kTiltA, kTiltB, Kinematics::from_beta(z, 1.0)) == -1.0);
}

TEST_CASE("joint_distribution") {
    const Direction z = Direction::unit_z();
    JointDistribution p = joint_distribution(Direction::unit_x(), Direction::unit_x(), Kinematics::from_beta(z, 0.0));
    CHECK(p(1, 1) == 0.0);
    CHECK(p(-1, -1) == 0.0);
    CHECK(p(1, -1) == 0.5);
    CHECK(p(-1, 1) == 0.5);

    p = joint_distribution(Direction::unit_x(), Direction::unit_y(), Kinematics::from_beta(z, 0.0));
    for (int r : {1, -1})
        for (int s : {1, -1}) CHECK(p(r, s) == doctest::Approx(0.25).epsilon(1e-15));

    p = joint_distribution(kTiltA, kTiltB, Kinematics::from_beta(z, 0.6));
    CHECK(std::abs(p(1, 1) - 0.1951219512195122) <= 1e-12);
    CHECK(std::abs(p(-1, -1) - 0.1951219512195122) <= 1e-12);
}

TEST_CASE("joint_distribution matches projector probabilities on the singlet") {
    RngStream rng(36);
    const StateVector4 psi = singlet_state().vector;
    const ComplexMatrix2 id = ComplexMatrix2::identity();
    for (int k = 0; k < 500; ++k) {
        const Direction n = random_direction(rng);
        const Kinematics kin = Kinematics::from_beta(n, rng.next_uniform() * 0.999);
        const Direction a = random_direction(rng);
        const Direction b = random_direction(rng);
        const JointDistribution p = joint_distribution(a, b, kin);
        const ComplexMatrix2 ma = binary_observable(a, kin).matrix;
        const ComplexMatrix2 mb = binary_observable(b, kin).matrix;
        double total = 0.0;
        for (int r : {1, -1}) {
            for (int s : {1, -1}) {
                const ComplexMatrix2 pa = 0.5 * (id + static_cast<double>(r) * ma);
                const ComplexMatrix2 pb = 0.5 * (id + static_cast<double>(s) * mb);
                const double born = expectation(psi, kron2(pa, pb));
                CHECK(std::abs(p(r, s) - born) <= 1e-12);
                CHECK(p(r, s) >= 0.0);
                total += p(r, s);
            }
            CHECK(std::abs(p(r, 1) + p(r, -1) - 0.5) <= 1e-12);
            CHECK(std::abs(p(1, r) + p(-1, r) - 0.5) <= 1e-12);
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("mc_estimate") {
    const Direction z = Direction::unit_z();
    const McEstimate exact = mc_estimate(Direction::unit_x(), Direction::unit_x(), Kinematics::from_beta(z, 0.3),
                                         1000, 5);
    CHECK(exact.mean == -1.0);
    CHECK(exact.std_error == 0.0);

    const Kinematics kin = Kinematics::from_beta(z, 0.6);
    const McEstimate first = mc_estimate(kTiltA, kTiltB, kin, 1000000, 7);
    const McEstimate again = mc_estimate(kTiltA, kTiltB, kin, 1000000, 7);
    CHECK(std::abs(first.mean - kTiltAt06) <= 0.004);
    CHECK(first.mean == again.mean);
    CHECK(first.std_error == again.std_error);
    CHECK(first.std_error == doctest::Approx(std::sqrt((1.0 - first.mean * first.mean) / 1e6)));

    CHECK_THROWS_AS(mc_estimate(kTiltA, kTiltB, kin, 99, 1), InvalidSampleCount);
    CHECK_THROWS_AS(mc_estimate(Direction::unit_x(), kTiltB, Kinematics::from_beta(z, 1.0), 1000, 1),
                    DegenerateObservable);
}

TEST_CASE("packet_average") {
    const Direction z = Direction::unit_z();
    PacketSpec spec{1.0, 0.75, 0.05, z, 1};
    const double plane = correlation_analytic(kTiltA, kTiltB, Kinematics::from_momentum(z, 1.0, 0.75));
    CHECK(std::abs(packet_average(kTiltA, kTiltB, spec).value - plane) <= 1e-15);

    spec.p_sigma = 1e-9 * spec.p_mean;
    for (int order : {2, 7, 16, 64}) {
        spec.quadrature_order = order;
        CHECK(std::abs(packet_average(kTiltA, kTiltB, spec).value - plane) <= 1e-9);
    }

    spec.quadrature_order = 0;
    CHECK_THROWS_AS(packet_average(kTiltA, kTiltB, spec), OrderOutOfRange);
}

TEST_CASE("packet_average against trapezoid integration") {
    const Direction z = Direction::unit_z();
    const double mean = 0.75, sigma = 0.05;
    // Brute force: trapezoid rule over +-10 sigma with 1e5 points, using the
    // tilted-pair closed form directly.
    const int points = 100000;
    const double lo = mean - 10.0 * sigma, hi = mean + 10.0 * sigma;
    const double h = (hi - lo) / (points - 1);
    double integral = 0.0;
    for (int k = 0; k < points; ++k) {
        const double p = lo + k * h;
        const double beta = p / std::sqrt(p * p + 1.0);
        const double density = std::exp(-0.5 * std::pow((p - mean) / sigma, 2)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
        const double weight = (k == 0 || k == points - 1) ? 0.5 : 1.0;
        integral += weight * h * density * tilt_closed_form(beta);
    }

    const PacketAverage avg = packet_average(kTiltA, kTiltB, PacketSpec{1.0, mean, sigma, z, 16});
    CHECK_FALSE(avg.clamped);
    CHECK_FALSE(avg.broad_packet);
    CHECK(std::abs(avg.value - integral) <= 1e-9);
    CHECK(std::abs(avg.value - kTiltAt06) <= 0.002);
    // high-precision adaptive quadrature of the same integral
    CHECK(std::abs(avg.value - (-0.219606966944971)) <= 1e-9);
}

TEST_CASE("packet_average flags broad packets and clamps negative momenta") {
    const Direction z = Direction::unit_z();
    const PacketAverage avg = packet_average(kTiltA, kTiltB, PacketSpec{1.0, 0.1, 0.2, z, 16});
    CHECK(avg.broad_packet);
    CHECK(avg.clamped);
    CHECK(avg.value <= 0.0);
    CHECK(avg.value >= -1.0);
    CHECK_THROWS_AS(packet_average(kTiltA, kTiltB, PacketSpec{0.0, 0.1, 0.2, z, 16}), InvalidMass);
    CHECK_THROWS_AS(packet_average(kTiltA, kTiltB, PacketSpec{1.0, 0.1, 0.0, z, 16}), InvalidArgument);
}
