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

#include "relspin/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "relspin/errors.hpp"

namespace relspin {

Direction::Direction(double x, double y, double z) : v_{x, y, z} {
    const double len = norm(v_);
    if (!std::isfinite(len) || std::abs(len - 1.0) > 1e-12) {
        throw InvalidArgument("Direction: components are not a unit vector");
    }
}

Direction Direction::normalized(const Vec3 &v) {
    const double len = norm(v);
    if (!std::isfinite(len) || len == 0.0) {
        throw InvalidArgument("Direction: cannot normalize a zero or non-finite vector");
    }
    return Direction(Tag{}, (1.0 / len) * v);
}

double beta_from_momentum(double mass, double p_mag) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvalidMass("mass must be positive and finite");
    }
    if (!(p_mag >= 0.0) || !std::isfinite(p_mag)) {
        throw InvalidArgument("momentum magnitude must be non-negative and finite");
    }
    return p_mag / std::hypot(p_mag, mass);
}

Kinematics::Kinematics(const Direction &n, double beta, std::optional<MomentumProvenance> provenance)
    : n_(n), beta_(beta), provenance_(provenance) {
    if (provenance_) {
        transverse_scale_ = provenance_->mass / std::hypot(provenance_->p_mag, provenance_->mass);
        one_minus_beta_sq_ = transverse_scale_ * transverse_scale_;
    } else {
        one_minus_beta_sq_ = (1.0 - beta_) * (1.0 + beta_);
        transverse_scale_ = std::sqrt(one_minus_beta_sq_);
    }
}

Kinematics Kinematics::from_beta(const Direction &n, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw InvalidArgument("beta must lie in [0, 1]");
    }
    return Kinematics(n, beta, std::nullopt);
}

Kinematics Kinematics::from_momentum(const Direction &n, double mass, double p_mag) {
    const double beta = beta_from_momentum(mass, p_mag);
    return Kinematics(n, beta, MomentumProvenance{mass, p_mag});
}

Kinematics Kinematics::with_direction(const Direction &n) const {
    Kinematics out = *this;
    out.n_ = n;
    return out;
}

HelicityFrame::HelicityFrame(const Direction &n) : e3(n.vec()) {
    if (std::hypot(n.x(), n.y()) < 1e-12) {
        e1 = {1.0, 0.0, 0.0};
        e2 = {0.0, 1.0, 0.0};
        return;
    }
    e1 = Direction::normalized(cross({0.0, 0.0, 1.0}, n.vec())).vec();
    e2 = cross(n.vec(), e1);
}

namespace {

ComplexMatrix2 pauli_from_components(const Vec3 &c) {
    ComplexMatrix2 m;
    m(0, 0) = c.z;
    m(1, 1) = -c.z;
    m(0, 1) = Complex(c.x, -c.y);
    m(1, 0) = Complex(c.x, c.y);
    return m;
}

// alpha for a direction already expressed in helicity-frame components.
Vec3 frame_alpha(const Vec3 &a_frame, const Kinematics &kin) {
    const double s = kin.transverse_scale();
    return {s * a_frame.x, s * a_frame.y, a_frame.z};
}

}  // namespace

ComplexMatrix2 pauli_along(const Vec3 &v, const HelicityFrame &frame) {
    return pauli_from_components(frame.components(v));
}

Vec3 alpha_vector(const Direction &a, const Kinematics &kin) {
    const double s = kin.transverse_scale();
    const Vec3 &n = kin.n();
    const double along = (1.0 - s) * dot(n, a);
    return {s * a.x() + along * n.x, s * a.y() + along * n.y, s * a.z() + along * n.z};
}

double alpha_norm(const Direction &a, const Kinematics &kin) {
    const double c = dot(kin.n(), a);
    const double beta = kin.beta();
    // 1 + beta^2 (c^2 - 1), regrouped so that beta = 1 gives exactly c^2.
    return std::min(1.0, std::sqrt(kin.one_minus_beta_sq() + beta * beta * c * c));
}

SpinObservable spin_projection_matrix(const Direction &a, const Kinematics &kin) {
    const Vec3 alpha = alpha_vector(a, kin);
    const HelicityFrame frame(kin.n());
    ComplexMatrix2 m = pauli_along(alpha, frame);
    m *= 0.5;
    return SpinObservable{a, kin, alpha, m};
}

std::vector<double> spin_eigenvalues(double j, const Direction &a, const Kinematics &kin) {
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (!std::isfinite(twice) || rounded < 1.0 || std::abs(twice - rounded) > 1e-12 || rounded > 1e6) {
        throw InvalidSpin("spin j must be a positive half-integer, got " + std::to_string(j));
    }
    const int count = static_cast<int>(rounded) + 1;
    const double length = alpha_norm(a, kin);
    std::vector<double> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        // j3 = -j + k
        const double j3 = 0.5 * (2 * k - rounded);
        out.push_back(j3 * length + 0.0);
    }
    return out;
}

std::array<ComplexMatrix2, 3> spin_component_matrices(const Kinematics &kin) {
    // The frame axes have exact components (1,0,0), (0,1,0), (0,0,1) in the
    // helicity frame, so the projections are built there directly.
    const std::array<Vec3, 3> axes{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}};
    std::array<ComplexMatrix2, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = pauli_from_components(frame_alpha(axes[i], kin));
        out[i] *= 0.5;
    }
    return out;
}

CommutatorDefects commutator_defect(const Kinematics &kin) {
    const auto [s1, s2, s3] = spin_component_matrices(kin);
    const Complex i(0.0, 1.0);
    const ComplexMatrix2 c12 = commutator(s1, s2);
    CommutatorDefects d;
    d.d12 = norm_inf(c12 - (i * kin.one_minus_beta_sq()) * s3);
    d.d23 = norm_inf(commutator(s2, s3) - i * s1);
    d.d31 = norm_inf(commutator(s3, s1) - i * s2);
    d.transverse = norm_inf(c12);
    return d;
}

Direction random_direction(RngStream &rng) {
    const double z = 1.0 - 2.0 * rng.next_uniform();
    const double phi = 2.0 * std::numbers::pi * rng.next_uniform();
    const double r = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
    return Direction::normalized({r * std::cos(phi), r * std::sin(phi), z});
}

Direction random_perpendicular(const Direction &n, RngStream &rng) {
    const HelicityFrame frame(n);
    const double phi = 2.0 * std::numbers::pi * rng.next_uniform();
    return Direction::normalized(std::cos(phi) * frame.e1 + std::sin(phi) * frame.e2);
}

}  // namespace relspin
