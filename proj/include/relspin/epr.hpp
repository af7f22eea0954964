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

#include "relspin/mathcore.hpp"
#include "relspin/spin.hpp"

namespace relspin {

/// Threshold on |alpha| below which the normalized observable is undefined.
inline constexpr double kDegeneracyThreshold = 1e-12;

/// How the second particle moves relative to the first. Both share beta.
enum class PairGeometry {
    same_momentum,  // n2 = n, the configuration of the singlet correlation law
    antiparallel,   // n2 = -n, back-to-back pair
};

struct SingletState {
    StateVector4 vector;
};

/// (|+,-> - |-,+>) / sqrt(2) in the product helicity basis.
SingletState singlet_state();

/// a.S / |lambda_a|: a +-1-valued observable.
struct BinaryObservable {
    Direction direction;
    Kinematics kin;
    Direction unit_alpha;
    ComplexMatrix2 matrix;  // unit_alpha . sigma, helicity frame of kin.n()
};

/// Throws DegenerateObservable if |alpha| <= 1e-12 (beta = 1, a perpendicular to n).
BinaryObservable binary_observable(const Direction &a, const Kinematics &kin);

/// Closed-form singlet correlation
///
///   E = -(a.b - beta^2 a_perp.b_perp) /
///        (sqrt(1 + beta^2 ((n.a)^2 - 1)) sqrt(1 + beta^2 ((n.b)^2 - 1)))
///
/// With PairGeometry::antiparallel particle b uses n2 = -n.
double correlation_analytic(const Direction &a, const Direction &b, const Kinematics &kin,
                            PairGeometry geometry = PairGeometry::same_momentum);

/// <psi| a_hat (x) b_hat |psi> from explicit 4x4 matrices on the singlet.
/// For the antiparallel pair both observables are written in the helicity
/// frame of particle a, which the singlet shares.
double correlation_oracle(const Direction &a, const Direction &b, const Kinematics &kin,
                          PairGeometry geometry = PairGeometry::same_momentum);

/// Born-rule probabilities of the outcome pair (r, s) in {+1, -1}^2.
struct JointDistribution {
    double pp = 0.0;
    double pm = 0.0;
    double mp = 0.0;
    double mm = 0.0;

    double operator()(int r, int s) const;
};

/// P(r, s) = (1 + r s E) / 4.
JointDistribution joint_distribution(const Direction &a, const Direction &b, const Kinematics &kin,
                                     PairGeometry geometry = PairGeometry::same_momentum);

struct McEstimate {
    double mean = 0.0;    // E_hat
    double std_error = 0.0;  // sqrt((1 - E_hat^2) / samples)
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Samples outcome pairs from joint_distribution with RngStream(seed).
/// Throws InvalidSampleCount if samples < 100.
McEstimate mc_estimate(const Direction &a, const Direction &b, const Kinematics &kin, std::int64_t samples,
                       std::uint64_t seed, PairGeometry geometry = PairGeometry::same_momentum);

/// Gaussian momentum spread around p_mean along a fixed direction n.
struct PacketSpec {
    double mass = 1.0;
    double p_mean = 0.0;
    double p_sigma = 0.0;
    Direction n;
    int quadrature_order = 16;
};

struct PacketAverage {
    double value = 0.0;
    bool clamped = false;       // some node had negative momentum, set to 0
    bool broad_packet = false;  // p_sigma >= p_mean / 3, or p_mean == 0
};

/// Incoherent average of correlation_analytic over the momentum
/// distribution, by Gauss-Hermite quadrature at p_i = p_mean + sqrt(2)
/// p_sigma x_i.
PacketAverage packet_average(const Direction &a, const Direction &b, const PacketSpec &spec);

}  // namespace relspin
