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
#include <cmath>
#include <optional>
#include <vector>

#include "relspin/mathcore.hpp"

// Natural units throughout: hbar = c = 1.

namespace relspin {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    bool operator==(const Vec3 &) const = default;
};

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

/// Unit 3-vector. The invariant |v| = 1 holds to 1e-12.
class Direction {
   public:
    Direction() : v_{0.0, 0.0, 1.0} {}

    /// Accepts (x, y, z) only if it is already unit length within 1e-12.
    Direction(double x, double y, double z);

    /// Rescales any nonzero finite vector onto the unit sphere.
    static Direction normalized(const Vec3 &v);

    static Direction unit_x() { return Direction(1.0, 0.0, 0.0); }
    static Direction unit_y() { return Direction(0.0, 1.0, 0.0); }
    static Direction unit_z() { return Direction(0.0, 0.0, 1.0); }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3 &vec() const { return v_; }
    operator const Vec3 &() const { return v_; }

    Direction operator-() const { return Direction(Tag{}, -v_); }
    bool operator==(const Direction &) const = default;

   private:
    struct Tag {};
    Direction(Tag, const Vec3 &v) : v_(v) {}
    Vec3 v_;
};

/// Mass and momentum magnitude a Kinematics value was derived from.
struct MomentumProvenance {
    double mass = 1.0;
    double p_mag = 0.0;
};

/// Momentum direction n and speed beta in [0, 1]; beta = 1 is the massless
/// limit.
class Kinematics {
   public:
    /// Throws InvalidArgument unless 0 <= beta <= 1.
    static Kinematics from_beta(const Direction &n, double beta);
    /// Throws InvalidMass if mass <= 0, InvalidArgument if p_mag < 0.
    static Kinematics from_momentum(const Direction &n, double mass, double p_mag);

    const Direction &n() const { return n_; }
    double beta() const { return beta_; }
    const std::optional<MomentumProvenance> &provenance() const { return provenance_; }

    /// sqrt(1 - beta^2) = m / p0, the factor applied to spin components
    /// transverse to n.
    double transverse_scale() const { return transverse_scale_; }
    /// 1 - beta^2, evaluated without cancellation.
    double one_minus_beta_sq() const { return one_minus_beta_sq_; }

    Kinematics with_direction(const Direction &n) const;

   private:
    Kinematics(const Direction &n, double beta, std::optional<MomentumProvenance> provenance);

    Direction n_;
    double beta_;
    std::optional<MomentumProvenance> provenance_;
    double transverse_scale_;
    double one_minus_beta_sq_;
};

/// beta = p / sqrt(p^2 + m^2) on the positive-energy branch.
double beta_from_momentum(double mass, double p_mag);

/// Orthonormal frame (e1, e2, e3 = n) defining the helicity basis. For
/// n = +-z this is (x, y, n); otherwise e1 = normalize(z x n), e2 = n x e1.
struct HelicityFrame {
    Vec3 e1;
    Vec3 e2;
    Vec3 e3;

    explicit HelicityFrame(const Direction &n);

    /// Components of v along (e1, e2, e3).
    Vec3 components(const Vec3 &v) const { return {dot(v, e1), dot(v, e2), dot(v, e3)}; }
};

/// v . sigma, with v given in lab coordinates and expressed in the helicity
/// frame of n.
ComplexMatrix2 pauli_along(const Vec3 &v, const HelicityFrame &frame);

/// alpha = sqrt(1-beta^2) a + (1 - sqrt(1-beta^2)) (n.a) n, so that
/// a.S = alpha.s.
Vec3 alpha_vector(const Direction &a, const Kinematics &kin);

/// |alpha| = sqrt(1 + beta^2 ((n.a)^2 - 1)), in [sqrt(1-beta^2), 1].
double alpha_norm(const Direction &a, const Kinematics &kin);

struct SpinObservable {
    Direction direction_a;
    Kinematics kin;
    Vec3 alpha;
    ComplexMatrix2 matrix;  // alpha.sigma / 2 in the helicity basis of n
};

SpinObservable spin_projection_matrix(const Direction &a, const Kinematics &kin);

/// The 2j+1 eigenvalues j3 |alpha|, j3 = -j..j, ascending. Throws
/// InvalidSpin unless 2j is a positive integer.
std::vector<double> spin_eigenvalues(double j, const Direction &a, const Kinematics &kin);

/// S1, S2, S3: spin projections on the helicity frame axes (S3 along n).
std::array<ComplexMatrix2, 3> spin_component_matrices(const Kinematics &kin);

struct CommutatorDefects {
    double d12 = 0.0;  // |[S1,S2] - i(1-beta^2) S3|
    double d23 = 0.0;  // |[S2,S3] - i S1|
    double d31 = 0.0;  // |[S3,S1] - i S2|
    double transverse = 0.0;  // |[S1,S2]|, shrinks to 0 as beta -> 1
};

/// Deviations of the spin-component algebra from the deformed so(3)
/// relations, measured in the infinity norm.
CommutatorDefects commutator_defect(const Kinematics &kin);

/// Uniform point on the unit sphere.
Direction random_direction(RngStream &rng);

/// Uniform unit vector orthogonal to n.
Direction random_perpendicular(const Direction &n, RngStream &rng);

}  // namespace relspin
