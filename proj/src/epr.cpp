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

#include "relspin/epr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "relspin/errors.hpp"

namespace relspin {

SingletState singlet_state() {
    const double h = 1.0 / std::numbers::sqrt2;
    return SingletState{StateVector4{Complex(0.0), Complex(h), Complex(-h), Complex(0.0)}};
}

namespace {

void require_nondegenerate(const Direction &a, const Kinematics &kin, const char *label) {
    const double length = alpha_norm(a, kin);
    if (length <= kDegeneracyThreshold) {
        throw DegenerateObservable(std::string("spin observable along ") + label +
                                   " has a collapsed spectrum (|alpha| = 0: the eigenvalues j3 |alpha| vanish "
                                   "for directions perpendicular to the momentum at beta = 1)");
    }
}

Kinematics partner_kinematics(const Kinematics &kin, PairGeometry geometry) {
    return geometry == PairGeometry::antiparallel ? kin.with_direction(-kin.n()) : kin;
}

}  // namespace

BinaryObservable binary_observable(const Direction &a, const Kinematics &kin) {
    require_nondegenerate(a, kin, "a");
    const Direction unit_alpha = Direction::normalized(alpha_vector(a, kin));
    const HelicityFrame frame(kin.n());
    return BinaryObservable{a, kin, unit_alpha, pauli_along(unit_alpha, frame)};
}

double correlation_analytic(const Direction &a, const Direction &b, const Kinematics &kin, PairGeometry geometry) {
    const Kinematics kin_b = partner_kinematics(kin, geometry);
    require_nondegenerate(a, kin, "a");
    require_nondegenerate(b, kin_b, "b");

    const Vec3 &na = kin.n();
    const Vec3 &nb = kin_b.n();
    const double ca = dot(na, a);
    const double cb = dot(nb, b);
    const Vec3 a_perp = a.vec() - ca * na;
    const Vec3 b_perp = b.vec() - cb * nb;
    const double beta_sq = kin.beta() * kin.beta();
    const double shrink = kin.one_minus_beta_sq();
    // a.b - beta^2 a_perp.b_perp regrouped as (1 - beta^2) a_perp.b_perp plus
    // the overlap of the parts along the momenta, n.n2 = +-1 exactly. At
    // beta = 1 this gives exactly +-1.
    const double axis_sign = geometry == PairGeometry::antiparallel ? -1.0 : 1.0;
    const double parallel = axis_sign * ca * cb;
    const double numerator = shrink * dot(a_perp, b_perp) + parallel;
    const double denom_a = std::sqrt(shrink + beta_sq * ca * ca);
    const double denom_b = std::sqrt(shrink + beta_sq * cb * cb);
    const double e = -numerator / (denom_a * denom_b);
    return std::clamp(e, -1.0, 1.0);
}

double correlation_oracle(const Direction &a, const Direction &b, const Kinematics &kin, PairGeometry geometry) {
    const BinaryObservable obs_a = binary_observable(a, kin);
    const BinaryObservable obs_b = binary_observable(b, partner_kinematics(kin, geometry));
    const HelicityFrame frame(kin.n());
    const ComplexMatrix4 joint = kron2(obs_a.matrix, pauli_along(obs_b.unit_alpha, frame));
    return expectation(singlet_state().vector, joint);
}

double JointDistribution::operator()(int r, int s) const {
    if (r > 0) {
        return s > 0 ? pp : pm;
    }
    return s > 0 ? mp : mm;
}

JointDistribution joint_distribution(const Direction &a, const Direction &b, const Kinematics &kin,
                                     PairGeometry geometry) {
    const double e = correlation_analytic(a, b, kin, geometry);
    const double same = 0.25 * (1.0 + e);
    const double opposite = 0.25 * (1.0 - e);
    return JointDistribution{same, opposite, opposite, same};
}

McEstimate mc_estimate(const Direction &a, const Direction &b, const Kinematics &kin, std::int64_t samples,
                       std::uint64_t seed, PairGeometry geometry) {
    if (samples < 100) {
        throw InvalidSampleCount("mc_estimate: need at least 100 samples, got " + std::to_string(samples));
    }
    const JointDistribution p = joint_distribution(a, b, kin, geometry);
    const double c1 = p.pp;
    const double c3 = c1 + p.pm + p.mp;

    RngStream rng(seed);
    std::int64_t agree = 0;
    for (std::int64_t k = 0; k < samples; ++k) {
        const double u = rng.next_uniform();
        // (+,+) and (-,-) give r s = +1; the mixed pairs give -1.
        if (u < c1 || !(u < c3)) {
            ++agree;
        }
    }
    const double n = static_cast<double>(samples);
    const double mean = (2.0 * static_cast<double>(agree) - n) / n;
    McEstimate out;
    out.mean = mean;
    out.std_error = std::sqrt(std::max(0.0, (1.0 - mean * mean) / n));
    out.samples = samples;
    out.seed = seed;
    return out;
}

PacketAverage packet_average(const Direction &a, const Direction &b, const PacketSpec &spec) {
    if (!(spec.mass > 0.0)) {
        throw InvalidMass("packet_average: mass must be positive");
    }
    if (!(spec.p_mean >= 0.0) || !(spec.p_sigma > 0.0) || !std::isfinite(spec.p_mean) ||
        !std::isfinite(spec.p_sigma)) {
        throw InvalidArgument("packet_average: need p_mean >= 0 and p_sigma > 0");
    }
    const QuadratureRule rule = gauss_hermite(spec.quadrature_order);

    PacketAverage out;
    out.broad_packet = spec.p_mean == 0.0 || spec.p_sigma >= spec.p_mean / 3.0;
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double p = spec.p_mean + std::numbers::sqrt2 * spec.p_sigma * rule.nodes[i];
        if (p < 0.0) {
            p = 0.0;
            out.clamped = true;
        }
        const Kinematics kin = Kinematics::from_momentum(spec.n, spec.mass, p);
        total += rule.weights[i] * correlation_analytic(a, b, kin);
    }
    out.value = total / std::sqrt(std::numbers::pi);
    return out;
}

}  // namespace relspin
