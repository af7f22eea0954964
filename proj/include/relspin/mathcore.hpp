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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace relspin {

using Complex = std::complex<double>;

/// Dense fixed-size complex square matrix, row-major.
template <std::size_t N>
struct SquareMatrix {
    std::array<Complex, N * N> entries{};

    static constexpr std::size_t size() { return N; }

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    Complex &operator()(std::size_t row, std::size_t col) { return entries[row * N + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const { return entries[row * N + col]; }

    SquareMatrix adjoint() const {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                out(i, j) = std::conj((*this)(j, i));
            }
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    SquareMatrix &operator+=(const SquareMatrix &rhs) {
        for (std::size_t k = 0; k < N * N; ++k) {
            entries[k] += rhs.entries[k];
        }
        return *this;
    }
    SquareMatrix &operator-=(const SquareMatrix &rhs) {
        for (std::size_t k = 0; k < N * N; ++k) {
            entries[k] -= rhs.entries[k];
        }
        return *this;
    }
    SquareMatrix &operator*=(Complex scale) {
        for (auto &e : entries) {
            e *= scale;
        }
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix &rhs) { return lhs += rhs; }
    friend SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix &rhs) { return lhs -= rhs; }
    friend SquareMatrix operator*(Complex scale, SquareMatrix m) { return m *= scale; }
    friend SquareMatrix operator*(SquareMatrix m, Complex scale) { return m *= scale; }

    friend SquareMatrix operator*(const SquareMatrix &lhs, const SquareMatrix &rhs) {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t k = 0; k < N; ++k) {
                const Complex l = lhs(i, k);
                for (std::size_t j = 0; j < N; ++j) {
                    out(i, j) += l * rhs(k, j);
                }
            }
        }
        return out;
    }

    bool operator==(const SquareMatrix &) const = default;
};

using ComplexMatrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

/// Two-qubit amplitudes in the product basis (|+,+>, |+,->, |-,+>, |-,->).
using StateVector4 = std::array<Complex, 4>;

namespace pauli {
ComplexMatrix2 x();
ComplexMatrix2 y();
ComplexMatrix2 z();
}  // namespace pauli

/// Largest absolute row sum (the induced infinity norm).
template <std::size_t N>
double norm_inf(const SquareMatrix<N> &m) {
    double best = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            row += std::abs(m(i, j));
        }
        best = std::max(best, row);
    }
    return best;
}

/// Largest elementwise deviation |M - M^dagger|.
template <std::size_t N>
double hermiticity_defect(const SquareMatrix<N> &m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

template <std::size_t N>
SquareMatrix<N> commutator(const SquareMatrix<N> &a, const SquareMatrix<N> &b) {
    return a * b - b * a;
}

/// Kronecker product with block layout [A00*B, A01*B; A10*B, A11*B].
ComplexMatrix4 kron2(const ComplexMatrix2 &a, const ComplexMatrix2 &b);

double state_norm_squared(const StateVector4 &psi);

/// <psi|M|psi>. Throws NonHermitianInput when the imaginary part exceeds
/// 1e-12.
double expectation(const StateVector4 &psi, const ComplexMatrix4 &m);

/// Eigenvalues of a Hermitian 2x2 matrix in ascending order, from the
/// trace and the discriminant. Throws NonHermitianInput if M deviates from
/// M^dagger by more than 1e-12.
std::pair<double, double> eig2_hermitian(const ComplexMatrix2 &m);

/// SplitMix64. The state advances by 0x9E3779B97F4A7C15 per draw and the
/// output is the standard three-step xor-shift/multiply finalizer:
///
///     z = state += 0x9E3779B97F4A7C15
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     return z ^ (z >> 31)
///
/// Uniform doubles take the top 53 bits: (next_u64() >> 11) * 2^-53.
class RngStream {
   public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_uniform();
    std::uint64_t state() const { return state_; }

   private:
    std::uint64_t state_;
};

/// Gauss-Hermite rule for the weight exp(-x^2).
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // sum to sqrt(pi)
};

inline constexpr int kMaxQuadratureOrder = 64;

/// Throws OrderOutOfRange unless 1 <= order <= 64.
QuadratureRule gauss_hermite(int order);

struct MinimizeOptions {
    double tol = 1e-12;         // stop once max f - min f over the simplex < tol
    int max_iter = 5000;
    double initial_step = 0.5;  // edge length of the starting simplex
};

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;  // false means max_iter was hit; x is best-so-far
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Deterministic for a given x0. Dimension must be 1..8.
MinimizeResult minimize(const Objective &f, std::span<const double> x0, const MinimizeOptions &options = {});

}  // namespace relspin
