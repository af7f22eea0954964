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

#include "relspin/mathcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "relspin/errors.hpp"

namespace relspin {

namespace pauli {

ComplexMatrix2 x() {
    ComplexMatrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix2 y() {
    ComplexMatrix2 m;
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

ComplexMatrix2 z() {
    ComplexMatrix2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace pauli

ComplexMatrix4 kron2(const ComplexMatrix2 &a, const ComplexMatrix2 &b) {
    ComplexMatrix4 out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

double state_norm_squared(const StateVector4 &psi) {
    double total = 0.0;
    for (const auto &amp : psi) {
        total += std::norm(amp);
    }
    return total;
}

double expectation(const StateVector4 &psi, const ComplexMatrix4 &m) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            row += m(i, j) * psi[j];
        }
        acc += std::conj(psi[i]) * row;
    }
    if (std::abs(acc.imag()) > 1e-12) {
        throw NonHermitianInput("expectation has imaginary part " + std::to_string(acc.imag()));
    }
    return acc.real();
}

std::pair<double, double> eig2_hermitian(const ComplexMatrix2 &m) {
    if (hermiticity_defect(m) > 1e-12) {
        throw NonHermitianInput("eig2_hermitian: matrix is not Hermitian");
    }
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    // sqrt(((a - d) / 2)^2 + |b|^2) avoids the cancellation in tr^2 - 4 det.
    const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean - radius, mean + radius};
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > kMaxQuadratureOrder) {
        throw OrderOutOfRange("gauss_hermite: order " + std::to_string(order) + " outside [1, " +
                              std::to_string(kMaxQuadratureOrder) + "]");
    }
    const int n = order;
    const double pi_m4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    // Roots are found largest first; x[i] > 0 for i < n / 2.
    std::vector<double> x(n), w(n);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        // Newton on the orthonormal Hermite recurrence, which stays O(1)
        // for every order up to 64.
        double derivative = 0.0;
        bool done = false;
        for (int iter = 0; iter < 100 && !done; ++iter) {
            double p1 = pi_m4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            derivative = std::sqrt(2.0 * n) * p2;
            const double previous = z;
            z = previous - p1 / derivative;
            done = std::abs(z - previous) <= 1e-14 * std::max(1.0, std::abs(z));
        }
        if (!done) {
            throw Error("gauss_hermite: Newton iteration did not converge");
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (derivative * derivative);
        w[n - 1 - i] = w[i];
    }
    if (n % 2 == 1) {
        x[n / 2] = 0.0;
    }
    std::reverse(x.begin(), x.end());
    std::reverse(w.begin(), w.end());
    return QuadratureRule{std::move(x), std::move(w)};
}

namespace {

double sanitized(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

MinimizeResult minimize(const Objective &f, std::span<const double> x0, const MinimizeOptions &options) {
    const std::size_t dim = x0.size();
    if (dim == 0 || dim > 8) {
        throw InvalidArgument("minimize: dimension must be in [1, 8]");
    }
    const std::size_t count = dim + 1;
    std::vector<std::vector<double>> vertex(count, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> value(count);
    for (std::size_t i = 1; i < count; ++i) {
        vertex[i][i - 1] += options.initial_step;
    }
    for (std::size_t i = 0; i < count; ++i) {
        value[i] = sanitized(f(vertex[i]));
    }

    std::vector<std::size_t> order(count);
    std::vector<double> centroid(dim), trial(dim), second(dim);
    auto along = [&](std::vector<double> &out, double t, const std::vector<double> &from) {
        // out = centroid + t * (from - centroid)
        for (std::size_t k = 0; k < dim; ++k) {
            out[k] = centroid[k] + t * (from[k] - centroid[k]);
        }
        return sanitized(f(out));
    };

    MinimizeResult result;
    int iter = 0;
    for (;; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t runner_up = order[count - 2];

        if (value[worst] - value[best] < options.tol || value[worst] == value[best]) {
            result.converged = true;
            break;
        }
        if (iter >= options.max_iter) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < count; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) {
                centroid[k] += vertex[i][k];
            }
        }
        for (auto &c : centroid) {
            c /= static_cast<double>(dim);
        }

        const double reflected = along(trial, -1.0, vertex[worst]);
        if (reflected < value[best]) {
            const double expanded = along(second, -2.0, vertex[worst]);
            if (expanded < reflected) {
                vertex[worst] = second;
                value[worst] = expanded;
            } else {
                vertex[worst] = trial;
                value[worst] = reflected;
            }
            continue;
        }
        if (reflected < value[runner_up]) {
            vertex[worst] = trial;
            value[worst] = reflected;
            continue;
        }

        bool accepted = false;
        if (reflected < value[worst]) {
            const double contracted = along(second, 0.5, trial);
            if (contracted <= reflected) {
                vertex[worst] = second;
                value[worst] = contracted;
                accepted = true;
            }
        } else {
            const double contracted = along(second, 0.5, vertex[worst]);
            if (contracted < value[worst]) {
                vertex[worst] = second;
                value[worst] = contracted;
                accepted = true;
            }
        }
        if (!accepted) {
            for (std::size_t i = 0; i < count; ++i) {
                if (i == best) continue;
                for (std::size_t k = 0; k < dim; ++k) {
                    vertex[i][k] = vertex[best][k] + 0.5 * (vertex[i][k] - vertex[best][k]);
                }
                value[i] = sanitized(f(vertex[i]));
            }
        }
    }

    const std::size_t best = order.front();
    result.x = vertex[best];
    result.value = value[best];
    result.iterations = iter;
    return result;
}

}  // namespace relspin
