#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tracelab/diagnostics.hpp"
#include "tracelab/doubled.hpp"
#include "tracelab/runner.hpp"
#include "tracelab/twist.hpp"

namespace py = pybind11;
using namespace tracelab;

PYBIND11_MODULE(_tracelab, m) {
    m.doc() = "finite-lattice fermion laboratory: CAR algebra, tracial-state "
              "doubling, and abelianess diagnostics";

    py::enum_<Boundary>(m, "Boundary")
        .value("periodic", Boundary::periodic)
        .value("open", Boundary::open);

    py::class_<LatticeSpec>(m, "Lattice")
        .def(py::init<int, Boundary>(), py::arg("L"),
             py::arg("boundary") = Boundary::periodic)
        .def_readonly("L", &LatticeSpec::L)
        .def_readonly("boundary", &LatticeSpec::boundary)
        .def("dim", &LatticeSpec::dim)
        .def("wrap", &LatticeSpec::wrap)
        .def("distance", &LatticeSpec::distance);

    py::enum_<NormKind>(m, "NormKind")
        .value("spectral", NormKind::spectral)
        .value("frobenius", NormKind::frobenius);

    py::class_<FockOperator>(m, "FockOperator")
        .def_property_readonly("matrix",
                               [](const FockOperator& a) { return a.matrix; })
        .def_property_readonly("support",
                               [](const FockOperator& a) {
                                   return std::vector<int>(a.support.begin(),
                                                           a.support.end());
                               })
        .def("adjoint", &FockOperator::adjoint)
        .def("__mul__", [](const FockOperator& a, const FockOperator& b) {
            return a * b;
        })
        .def("__add__", [](const FockOperator& a, const FockOperator& b) {
            return a + b;
        })
        .def("__sub__", [](const FockOperator& a, const FockOperator& b) {
            return a - b;
        })
        .def("__rmul__", [](const FockOperator& a, Complex c) { return c * a; });

    m.def("annihilator", &jw_annihilator, py::arg("x"), py::arg("lattice"));
    m.def("creator", &jw_creator, py::arg("x"), py::arg("lattice"));
    m.def("number", &number_operator, py::arg("x"), py::arg("lattice"));
    m.def("total_number", &total_number);
    m.def("parity", &global_parity);
    m.def("identity", &identity_operator);
    m.def(
        "u0",
        [](int x, const LatticeSpec& lat) {
            return local_unitary_u0(SmearingVector::delta(x, lat.L), lat);
        },
        py::arg("x"), py::arg("lattice"));
    m.def(
        "norm",
        [](const FockOperator& a, NormKind kind) { return operator_norm(a, kind); },
        py::arg("op"), py::arg("kind") = NormKind::spectral);
    m.def("shift_unitary", &shift_unitary);

    py::class_<HoppingKernel>(m, "HoppingKernel")
        .def(py::init([](const std::map<int, Complex>& entries) {
            HoppingKernel k{entries};
            k.validate();
            return k;
        }))
        .def_readonly("entries", &HoppingKernel::entries);

    py::class_<InteractionTerm>(m, "InteractionTerm")
        .def(py::init<std::vector<int>, std::vector<int>, Complex>(),
             py::arg("creators"), py::arg("annihilators"),
             py::arg("coefficient") = Complex(1.0, 0.0));

    py::class_<GgeTerm>(m, "GgeTerm")
        .def(py::init<std::vector<int>, double>(), py::arg("sites"),
             py::arg("coefficient") = 1.0);

    py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
        .def(py::init([](const LatticeSpec& lat, const HoppingKernel& kernel,
                         const std::vector<InteractionTerm>& interactions,
                         const std::vector<GgeTerm>& gge) {
                 return HamiltonianSpec{lat, kernel, interactions, gge};
             }),
             py::arg("lattice"), py::arg("kernel") = HoppingKernel{},
             py::arg("interactions") = std::vector<InteractionTerm>{},
             py::arg("gge_terms") = std::vector<GgeTerm>{})
        .def_readonly("lattice", &HamiltonianSpec::lattice);

    m.def("quasifree_benchmark", &quasifree_benchmark);
    m.def("interacting_benchmark", &interacting_benchmark);
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("spec"),
          py::arg("validate") = true);
    m.def("translation_orbit", &translation_orbit);
    m.def("single_particle_matrix", &single_particle_matrix);

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("eigenvalues", &EigenSystem::eigenvalues)
        .def("propagator", &EigenSystem::propagator);
    m.def(
        "eigendecompose",
        [](const FockOperator& H, double tol) { return eigendecompose(H, tol); },
        py::arg("H"), py::arg("gap_tolerance") = 1e-9);
    m.def(
        "heisenberg",
        [](const FockOperator& A, const EigenSystem& eig, double t) {
            return heisenberg(A, eig, t);
        },
        py::arg("A"), py::arg("eig"), py::arg("t"));
    m.def("single_particle_propagator", &single_particle_propagator);
    m.def(
        "eta_mean",
        [](const FockOperator& A, const EigenSystem& eig) {
            return eta_mean(A, eig);
        },
        py::arg("A"), py::arg("eig"));

    py::class_<DecayCurve>(m, "DecayCurve")
        .def_readonly("times", &DecayCurve::times)
        .def_readonly("values", &DecayCurve::values)
        .def_readonly("window_exceeded", &DecayCurve::window_exceeded);
    m.def("commutator_decay", &commutator_decay, py::arg("A"), py::arg("B"),
          py::arg("eig"), py::arg("times"),
          py::arg("norm") = NormKind::spectral);
    m.def("anticommutator_decay", &anticommutator_decay, py::arg("A"),
          py::arg("B"), py::arg("eig"), py::arg("times"),
          py::arg("norm") = NormKind::spectral);
    m.def("localization_radius", &localization_radius, py::arg("A"),
          py::arg("eig"), py::arg("times"), py::arg("epsilon"));

    py::class_<DoubledSystem>(m, "DoubledSystem")
        .def_readonly("L", &DoubledSystem::L)
        .def_property_readonly("omega",
                               [](const DoubledSystem& s) { return s.omega; })
        .def("dim", &DoubledSystem::dim)
        .def("embed", &DoubledSystem::embed)
        .def("restrict", &DoubledSystem::restrict)
        .def("tracial_expectation", &DoubledSystem::tracial_expectation);
    m.def("build_doubled", &build_doubled, py::arg("L"),
          py::arg("max_dim") = 1L << 14);
    m.def(
        "doubled_hamiltonian",
        [](const HamiltonianSpec& spec, const DoubledSystem& sys) {
            return doubled_hamiltonian(spec, sys);
        },
        py::arg("spec"), py::arg("system"));

    py::class_<TwistAngle>(m, "TwistAngle")
        .def_readonly("g", &TwistAngle::g)
        .def_static("quantum", &TwistAngle::quantum, py::arg("k"),
                    py::arg("lattice"));
    m.def("gauge_twist", &gauge_twist);
    m.def("covariance_check", &covariance_check, py::arg("angle"),
          py::arg("spec"), py::arg("times"), py::arg("validate") = true);
    py::class_<EigenoperatorResult>(m, "EigenoperatorResult")
        .def_readonly("residual", &EigenoperatorResult::residual)
        .def_readonly("energy", &EigenoperatorResult::energy)
        .def_readonly("minimizer_label", &EigenoperatorResult::minimizer_label);
    m.def("local_eigenoperator_residual", &local_eigenoperator_residual,
          py::arg("window"), py::arg("H"), py::arg("lattice"));

    py::class_<RunManifest>(m, "RunManifest")
        .def_readonly("checksums", &RunManifest::checksums)
        .def_readonly("config_echo", &RunManifest::config_echo)
        .def("to_json", &RunManifest::to_json);
    m.def(
        "run_scenario_text",
        [](const std::string& config_text, const std::string& out_dir) {
            ScenarioConfig cfg = parse_config(config_text);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            return run_scenario(cfg);
        },
        py::arg("config_text"), py::arg("out_dir") = std::string());
    m.def(
        "run_checks",
        [](bool full) {
            auto results =
                run_checks(full ? CheckLevel::full : CheckLevel::fast);
            std::vector<std::tuple<std::string, double, double, bool>> out;
            for (const auto& r : results)
                out.emplace_back(r.name, r.residual, r.tolerance, r.passed());
            return out;
        },
        py::arg("full") = false);
    m.def("list_scenarios", []() {
        std::vector<std::string> names;
        for (Scenario s : all_scenarios()) names.push_back(scenario_name(s));
        return names;
    });
}
