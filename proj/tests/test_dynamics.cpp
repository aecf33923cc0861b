#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tracelab/diagnostics.hpp"
#include "tracelab/dynamics.hpp"
#include "tracelab/hamiltonian.hpp"

using namespace tracelab;

namespace {

Vector random_vec(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
}

Matrix random_matrix(long n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Matrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

} // namespace

TEST_CASE("eigendecomposition reconstructs H with a unitary propagator") {
    LatticeSpec lat(3);
    FockOperator H = build_hamiltonian(interacting_benchmark(lat));
    EigenSystem eig = eigendecompose(H);
    Matrix rebuilt = eig.eigenvectors
                     * eig.eigenvalues.cast<Complex>().asDiagonal()
                     * eig.eigenvectors.adjoint();
    CHECK((rebuilt - H.matrix).norm() < 1e-11);
    Matrix U = eig.propagator(0.9);
    Matrix id = Matrix::Identity(lat.dim(), lat.dim());
    CHECK((U * U.adjoint() - id).norm() < 1e-12);
    // groups partition the index set in order
    int count = 0;
    for (const auto& g : eig.groups) count += int(g.size());
    CHECK(count == int(eig.dim()));
    std::mt19937 rng(1);
    CHECK_THROWS(eigendecompose(random_matrix(4, rng))); // not self-adjoint
}

TEST_CASE("H = mu N rotates each annihilator by a phase") {
    LatticeSpec lat(3);
    const double mu = 0.83, t = 1.21;
    FockOperator H = Complex(mu, 0.0) * total_number(lat);
    EigenSystem eig = eigendecompose(H);
    FockOperator a0 = jw_annihilator(0, lat);
    FockOperator moved = heisenberg(a0, eig, t);
    Complex phase = std::exp(Complex(0.0, -mu * t));
    CHECK((moved.matrix - phase * a0.matrix).norm() < 1e-12);
}

TEST_CASE("quasifree fast path equals the full Heisenberg picture") {
    LatticeSpec lat(5);
    HamiltonianSpec spec = quasifree_benchmark(lat);
    Matrix h = single_particle_matrix(spec.kernel, lat);
    EigenSystem eig = eigendecompose(build_hamiltonian(spec));
    std::mt19937 rng(21);
    for (double t : {0.3, 1.7}) {
        SmearingVector f(random_vec(5, rng));
        Matrix slow = heisenberg(smeared_annihilator(f, lat), eig, t).matrix;
        Matrix fast = quasifree_heisenberg(f, h, t, lat).matrix;
        CHECK((slow - fast).norm() < 1e-11);
    }
}

TEST_CASE("single-particle propagator is unitary and group-like") {
    LatticeSpec lat(6);
    Matrix h = single_particle_matrix(quasifree_benchmark(lat).kernel, lat);
    Matrix u1 = single_particle_propagator(h, 0.4);
    Matrix u2 = single_particle_propagator(h, 1.1);
    Matrix u3 = single_particle_propagator(h, 1.5);
    CHECK((u1 * u1.adjoint() - Matrix::Identity(6, 6)).norm() < 1e-13);
    CHECK((u1 * u2 - u3).norm() < 1e-12);
}

TEST_CASE("eta mean is the H-commuting idempotent pinching") {
    LatticeSpec lat(3);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    std::mt19937 rng(5);
    Matrix A = random_matrix(lat.dim(), rng);
    Matrix m = eta_mean(A, eig);
    CHECK((eta_mean(m, eig) - m).norm() < 1e-12);                    // idempotent
    CHECK(std::abs(m.trace() - A.trace()) < 1e-11);                  // trace preserving
    Matrix H = build_hamiltonian(interacting_benchmark(lat)).matrix;
    CHECK(commutator(m, H).norm() < 1e-10);                          // invariant
    CHECK((eta_mean(H, eig) - H).norm() < 1e-11);                    // fixes H itself
}

TEST_CASE("eta mean agrees with a long Cesaro average") {
    LatticeSpec lat(3);
    // open boundary + on-site tilt gives a nondegenerate-enough spectrum
    HamiltonianSpec spec = quasifree_benchmark(LatticeSpec(3, Boundary::open));
    spec.kernel.entries[0] = {0.618, 0.0};
    EigenSystem eig = eigendecompose(build_hamiltonian(spec));
    std::mt19937 rng(9);
    Matrix A = random_matrix(lat.dim(), rng);
    const double T = 400.0;
    const int steps = 4000;
    Matrix acc = Matrix::Zero(lat.dim(), lat.dim());
    for (int k = 0; k < steps; ++k)
        acc += heisenberg(A, eig, (k + 0.5) * T / steps);
    acc /= double(steps);
    CHECK((acc - eta_mean(A, eig)).norm() / A.norm() < 1e-2);
}

TEST_CASE("correlation spectrum reproduces the correlation function") {
    LatticeSpec lat(3);
    FockOperator H = build_hamiltonian(interacting_benchmark(lat));
    EigenSystem eig = eigendecompose(H);
    std::mt19937 rng(31);
    Vector state = random_vec(int(lat.dim()), rng);
    state /= state.norm();
    FockOperator A = jw_annihilator(0, lat), B = jw_annihilator(1, lat);
    SpectralMeasure mu = correlation_spectrum(A, B, eig, state);
    Expectation omega = vector_state(state);
    for (double t : {0.0, 0.45, 2.2}) {
        Complex direct = omega(A.matrix.adjoint() * heisenberg(B.matrix, eig, t));
        CHECK(std::abs(mu.evaluate(t) - direct) < 1e-11);
    }
    CHECK(std::abs(mu.weight_sum() - omega(A.matrix.adjoint() * B.matrix)) < 1e-11);
    // ascending frequencies
    for (size_t i = 1; i < mu.atoms.size(); ++i)
        CHECK(mu.atoms[i - 1].frequency < mu.atoms[i].frequency);
}

TEST_CASE("autocorrelation weights in an eigenstate are nonnegative") {
    LatticeSpec lat(3);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    Vector ground = eig.eigenvectors.col(0);
    FockOperator A = jw_annihilator(1, lat);
    SpectralMeasure mu = correlation_spectrum(A, A, eig, ground);
    for (const auto& atom : mu.atoms) {
        CHECK(atom.weight.real() > -1e-12);
        CHECK(std::abs(atom.weight.imag()) < 1e-12);
    }
}

TEST_CASE("recurrence heuristics") {
    LatticeSpec lat(3);
    EigenSystem eig = eigendecompose(total_number(lat)); // integer spectrum
    RecurrenceWindow w = recurrence_window(eig);
    CHECK(w.exact_recurrence);
    CHECK(w.t_max == doctest::Approx(2.0 * M_PI));
    CHECK(suggested_t_max(LatticeSpec(8)) == doctest::Approx(2.0));
}
