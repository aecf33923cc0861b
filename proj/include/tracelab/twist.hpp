#pragma once

#include <string>
#include <vector>

#include "tracelab/dynamics.hpp"
#include "tracelab/hamiltonian.hpp"

namespace tracelab {

/// Twist angle g for the gauge automorphism a_x -> e^{igx} a_x.  On rings g
/// must be a multiple of 2 pi / L for e^{igx} to be single-valued.
struct TwistAngle {
    double g = 0.0;
    bool quantized = false;

    static TwistAngle quantum(int k, const LatticeSpec& lattice) {
        return {2.0 * M_PI * k / lattice.L, true};
    }
    void validate(const LatticeSpec& lattice) const;
};

/// Linear map on operators given by conjugation with a unitary.
struct SuperOperator {
    Matrix unitary;

    Matrix apply(const Matrix& A) const { return unitary * A * unitary.adjoint(); }
    SuperOperator after(const SuperOperator& first) const {
        return {unitary * first.unitary};
    }
};

// Frobenius distance between two conjugation superoperators, maximized over
// the matrix-unit basis.
double superoperator_distance(const SuperOperator& S, const SuperOperator& T);

// Gamma(g) = exp(i g sum_x x n_x), diagonal in the occupation basis.
FockOperator gauge_twist(const TwistAngle& angle, const LatticeSpec& lattice);

// tau_g(t) : A -> Gamma(g) tau_t(Gamma(-g) A Gamma(g)) Gamma(-g).
SuperOperator twisted_evolution(const TwistAngle& angle, const EigenSystem& eig,
                                double t, const LatticeSpec& lattice);

// Max over t of the superoperator distance between sigma_1 tau_g(t) sigma_1^-1
// and tau_g(t).  Vanishes for the position-sum-conserving family.
double covariance_check(const TwistAngle& angle, const HamiltonianSpec& spec,
                        const std::vector<double>& times, bool validate = true);

// ||gamma(g) A - A|| in the tracial 2-norm.
double twist_locality_distance(const FockOperator& A, const TwistAngle& angle);

struct EigenoperatorResult {
    double residual = 0.0;
    double energy = 0.0;        // Bohr energy of the minimizer
    Matrix minimizer;           // normalized operator on the full space
    std::string minimizer_label;
    bool window_covers_lattice = false;
};

// Finite-size probe for local eigenoperators: eigenanalysis of the generator
// [H, .] compressed to the traceless local subalgebra of `window` (span of
// Majorana monomials over the window's modes), then the full-commutator
// leakage of each compressed eigenoperator.  Returns the best candidate.
EigenoperatorResult local_eigenoperator_residual(const std::vector<int>& window,
                                                 const FockOperator& H,
                                                 const LatticeSpec& lattice);

} // namespace tracelab
