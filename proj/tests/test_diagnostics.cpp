#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tracelab/diagnostics.hpp"
#include "tracelab/hamiltonian.hpp"

using namespace tracelab;

namespace {

Matrix random_matrix(long n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Matrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

} // namespace

TEST_CASE("commutator decay curves start at the static commutator") {
    LatticeSpec lat(4);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    FockOperator A = number_operator(0, lat);
    FockOperator B = number_operator(2, lat);
    DecayCurve c = commutator_decay(A, B, eig, {0.0, 0.5, 1.0});
    REQUIRE(c.values.size() == 3);
    CHECK(c.values[0] < 1e-13); // commuting at t = 0
    CHECK(c.values[1] > 1e-3);  // spreading makes them overlap
    CHECK(c.quantity == Quantity::commutator_norm);
}

TEST_CASE("odd pairs go through the anticommutator, and only those") {
    LatticeSpec lat(4);
    EigenSystem eig = eigendecompose(build_hamiltonian(quasifree_benchmark(lat)));
    FockOperator a0 = jw_annihilator(0, lat), a2 = jw_annihilator(2, lat);
    CHECK_THROWS(commutator_decay(a0, a2, eig, {0.0}));
    DecayCurve c = anticommutator_decay(a0, a2, eig, {0.0, 1.0});
    CHECK(c.values[0] < 1e-13); // distinct modes anticommute at t = 0
    CHECK_THROWS(anticommutator_decay(number_operator(0, lat), a2, eig, {0.0}));
}

TEST_CASE("even observables never sense a distant perturbation before it arrives") {
    // operator spreading is bounded: at tiny times the far commutator is tiny
    LatticeSpec lat(6);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    FockOperator A = number_operator(0, lat), B = number_operator(3, lat);
    DecayCurve c = commutator_decay(A, B, eig, {0.05});
    CHECK(c.values[0] < 1e-4);
}

TEST_CASE("conditional expectation onto a window") {
    LatticeSpec lat(4);
    std::vector<int> window{1, 2};
    std::mt19937 rng(2);
    Matrix X = random_matrix(lat.dim(), rng);
    Matrix E = conditional_expectation(X, window, lat);
    // projection property and trace preservation
    CHECK((conditional_expectation(E, window, lat) - E).norm() < 1e-11);
    CHECK(std::abs(E.trace() - X.trace()) < 1e-11);
    // fixes operators supported in the window
    Matrix n1 = number_operator(1, lat).matrix;
    CHECK((conditional_expectation(n1, window, lat) - n1).norm() < 1e-12);
    // sends operators supported outside to their tracial mean
    Matrix n3 = number_operator(3, lat).matrix;
    Matrix half = 0.5 * Matrix::Identity(lat.dim(), lat.dim());
    CHECK((conditional_expectation(n3, window, lat) - half).norm() < 1e-12);
    // the fixed algebra is exactly the window modes: commutes with outside modes
    CHECK(commutator(E, n3).norm() < 1e-10);
}

TEST_CASE("localization radius grows from zero under hopping") {
    LatticeSpec lat(5);
    EigenSystem eig = eigendecompose(build_hamiltonian(quasifree_benchmark(lat)));
    FockOperator A = number_operator(2, lat);
    DecayCurve c = localization_radius(A, eig, {0.0, 1.5}, 0.05);
    CHECK(c.values[0] == 0.0);
    CHECK(c.values[1] >= 1.0);
    CHECK(c.quantity == Quantity::localization_radius);
}

TEST_CASE("gge dynamics is strictly localized") {
    LatticeSpec lat(5);
    HamiltonianSpec spec;
    spec.lattice = lat;
    spec.gge_terms = {GgeTerm{{0}, 1.0}, GgeTerm{{0, 1}, 0.4}};
    EigenSystem eig = eigendecompose(build_hamiltonian(spec));
    FockOperator A = number_operator(2, lat);
    DecayCurve c = localization_radius(A, eig, {0.0, 5.0, 25.0}, 0.05);
    for (double v : c.values) CHECK(v <= 1.0);
    // diagonal H: densities at other sites commute with tau_t A for all t
    DecayCurve far = commutator_decay(A, number_operator(0, lat), eig,
                                      {0.0, 10.0, 40.0});
    for (double v : far.values) CHECK(v < 1e-10);
}

TEST_CASE("multitime clustering report carries the invariant product bound") {
    LatticeSpec lat(4);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    FockOperator A = number_operator(0, lat), B = number_operator(2, lat);
    Expectation omega = tracial_state(lat);
    ClusterReport rep = multitime_cluster(A, B, A.adjoint(), B.adjoint(), eig,
                                          omega, {0.0, 0.8, 1.6});
    REQUIRE(rep.defect.size() == 3);
    Complex wAA = omega((A * A.adjoint()).matrix);
    Complex wBB = omega((B * B.adjoint()).matrix);
    CHECK(rep.bound == doctest::Approx(std::abs(wAA * wBB)));
    // at t = 0 with commuting A, B the defect is the static connected part
    Complex c0 = omega((A * B * A.adjoint() * B.adjoint()).matrix)
                 - omega((A * A.adjoint()).matrix) * omega((B * B.adjoint()).matrix);
    CHECK(rep.defect[0] == doctest::Approx(std::abs(c0)).epsilon(1e-10));
    for (size_t i = 0; i < rep.times.size(); ++i)
        CHECK(rep.eta_quantity[i] >= 0.0);
}
