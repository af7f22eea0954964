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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "relspin/chsh.hpp"
#include "relspin/cli.hpp"
#include "relspin/epr.hpp"
#include "relspin/errors.hpp"
#include "relspin/mathcore.hpp"
#include "relspin/selfcheck.hpp"
#include "relspin/spin.hpp"

namespace py = pybind11;
using namespace relspin;

namespace {

std::vector<std::vector<Complex>> to_rows(const ComplexMatrix2 &m) {
    return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

std::array<double, 3> to_array(const Vec3 &v) { return {v.x, v.y, v.z}; }

Direction from_array(const std::array<double, 3> &v) { return Direction::normalized({v[0], v[1], v[2]}); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relativistic center-of-mass spin and EPR-Bohm singlet correlations.";

    auto base = py::register_exception<Error>(m, "RelspinError", PyExc_ValueError);
    py::register_exception<DegenerateObservable>(m, "DegenerateObservable", base.ptr());
    py::register_exception<NonHermitianInput>(m, "NonHermitianInput", base.ptr());
    py::register_exception<OrderOutOfRange>(m, "OrderOutOfRange", base.ptr());
    py::register_exception<InvalidMass>(m, "InvalidMass", base.ptr());
    py::register_exception<InvalidSpin>(m, "InvalidSpin", base.ptr());
    py::register_exception<InvalidSampleCount>(m, "InvalidSampleCount", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

    py::class_<Direction>(m, "Direction")
        .def(py::init([](double x, double y, double z) { return Direction::normalized({x, y, z}); }),
             py::arg("x"), py::arg("y"), py::arg("z"), "Unit vector along (x, y, z); the input is normalized.")
        .def(py::init(&from_array))
        .def_property_readonly("x", &Direction::x)
        .def_property_readonly("y", &Direction::y)
        .def_property_readonly("z", &Direction::z)
        .def("__neg__", [](const Direction &d) { return -d; })
        .def("__iter__", [](const Direction &d) { return py::iter(py::make_tuple(d.x(), d.y(), d.z())); })
        .def("__repr__", [](const Direction &d) {
            return "Direction(" + std::to_string(d.x()) + ", " + std::to_string(d.y()) + ", " +
                   std::to_string(d.z()) + ")";
        });
    py::implicitly_convertible<py::tuple, Direction>();
    py::implicitly_convertible<py::list, Direction>();

    py::class_<Kinematics>(m, "Kinematics")
        .def_static("from_beta", &Kinematics::from_beta, py::arg("n"), py::arg("beta"))
        .def_static("from_momentum", &Kinematics::from_momentum, py::arg("n"), py::arg("mass"), py::arg("p"))
        .def_property_readonly("n", &Kinematics::n)
        .def_property_readonly("beta", &Kinematics::beta)
        .def_property_readonly("transverse_scale", &Kinematics::transverse_scale);

    py::enum_<PairGeometry>(m, "PairGeometry")
        .value("same_momentum", PairGeometry::same_momentum)
        .value("antiparallel", PairGeometry::antiparallel);

    m.def("beta_from_momentum", &beta_from_momentum, py::arg("mass"), py::arg("p"));
    m.def(
        "alpha_vector", [](const Direction &a, const Kinematics &kin) { return to_array(alpha_vector(a, kin)); },
        py::arg("a"), py::arg("kin"));
    m.def("alpha_norm", &alpha_norm, py::arg("a"), py::arg("kin"));
    m.def(
        "spin_projection_matrix",
        [](const Direction &a, const Kinematics &kin) { return to_rows(spin_projection_matrix(a, kin).matrix); },
        py::arg("a"), py::arg("kin"));
    m.def("spin_eigenvalues", &spin_eigenvalues, py::arg("j"), py::arg("a"), py::arg("kin"));
    m.def(
        "commutator_defect",
        [](const Kinematics &kin) {
            const CommutatorDefects d = commutator_defect(kin);
            py::dict out;
            out["d12"] = d.d12;
            out["d23"] = d.d23;
            out["d31"] = d.d31;
            out["transverse"] = d.transverse;
            return out;
        },
        py::arg("kin"));

    m.def("singlet_state", []() {
        const auto v = singlet_state().vector;
        return std::vector<Complex>(v.begin(), v.end());
    });
    m.def("correlation_analytic", &correlation_analytic, py::arg("a"), py::arg("b"), py::arg("kin"),
          py::arg("geometry") = PairGeometry::same_momentum);
    m.def("correlation_oracle", &correlation_oracle, py::arg("a"), py::arg("b"), py::arg("kin"),
          py::arg("geometry") = PairGeometry::same_momentum);
    m.def(
        "joint_distribution",
        [](const Direction &a, const Direction &b, const Kinematics &kin) {
            const JointDistribution p = joint_distribution(a, b, kin);
            py::dict out;
            out[py::make_tuple(1, 1)] = p.pp;
            out[py::make_tuple(1, -1)] = p.pm;
            out[py::make_tuple(-1, 1)] = p.mp;
            out[py::make_tuple(-1, -1)] = p.mm;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("kin"));
    m.def(
        "mc_estimate",
        [](const Direction &a, const Direction &b, const Kinematics &kin, std::int64_t samples, std::uint64_t seed) {
            const McEstimate est = mc_estimate(a, b, kin, samples, seed);
            return py::make_tuple(est.mean, est.std_error);
        },
        py::arg("a"), py::arg("b"), py::arg("kin"), py::arg("samples"), py::arg("seed"));
    m.def(
        "packet_average",
        [](const Direction &a, const Direction &b, double mass, double p_mean, double p_sigma, const Direction &n,
           int order) {
            return packet_average(a, b, PacketSpec{mass, p_mean, p_sigma, n, order}).value;
        },
        py::arg("a"), py::arg("b"), py::arg("mass"), py::arg("p_mean"), py::arg("p_sigma"), py::arg("n"),
        py::arg("order") = 16);

    m.def("direction_from_angles", &direction_from_angles, py::arg("theta"), py::arg("phi"));
    m.def(
        "chsh_value",
        [](const std::array<std::array<double, 2>, 4> &angles, const Kinematics &kin) {
            AngleSet set;
            for (std::size_t i = 0; i < 4; ++i) {
                set.settings[i] = Angles{angles[i][0], angles[i][1]};
            }
            return chsh_value(set, kin);
        },
        py::arg("angles"), py::arg("kin"), "angles: four (theta, phi) pairs for a, a', b, b' in radians");
    m.def(
        "max_chsh",
        [](const Kinematics &kin, int restarts, std::uint64_t seed, double tol) {
            ChshOptions options;
            options.restarts = restarts;
            options.seed = seed;
            options.tol = tol;
            const ChshResult r = max_chsh(kin, options);
            py::list angles;
            for (const auto &s : r.angles.settings) {
                angles.append(py::make_tuple(s.theta, s.phi));
            }
            py::dict out;
            out["value"] = r.value;
            out["angles"] = angles;
            out["restarts_used"] = r.restarts_used;
            out["converged"] = r.converged;
            return out;
        },
        py::arg("kin"), py::arg("restarts") = 32, py::arg("seed") = 1, py::arg("tol") = 1e-12);

    m.def(
        "gauss_hermite",
        [](int order) {
            QuadratureRule rule = gauss_hermite(order);
            return py::make_tuple(rule.nodes, rule.weights);
        },
        py::arg("order"));

    m.def(
        "self_check",
        []() {
            py::list out;
            for (const auto &s : run_self_check()) {
                py::dict row;
                row["name"] = s.name;
                row["cases"] = s.cases;
                row["max_error"] = s.max_error;
                row["passed"] = s.passed;
                out.append(row);
            }
            return out;
        },
        "Runs the property sweeps; takes a few seconds.");
}
