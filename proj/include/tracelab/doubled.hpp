#pragma once

#include <vector>

#include "tracelab/dynamics.hpp"
#include "tracelab/hamiltonian.hpp"

namespace tracelab {

/// Antilinear map psi -> K conj(psi) on the doubled Fock space.
struct AntilinearMap {
    Matrix K;

    Vector apply(const Vector& psi) const { return K * psi.conjugate(); }
    // Matrix of the linear map X -> J X J.
    Matrix conjugate_operator(const Matrix& X) const {
        return K * X.conjugate() * K.conjugate();
    }
    // J^2 as a linear map (should be the identity).
    Matrix square() const { return K * K.conjugate(); }
};

/// GNS realization of the tracial state of L modes as the vacuum of a 2L-mode
/// Fock space.  A-modes occupy doubled sites 0..L-1, B-modes L..2L-1, with a
/// single global Jordan-Wigner string.  The physical annihilators are the
/// Bogoliubov combinations a_x = (A_x + B*_x)/sqrt(2); the commutant
/// generators b_x = W J a_x J are materialized from the modular conjugation
/// and come out as (B_x - A*_x)/sqrt(2).
struct DoubledSystem {
    int L = 1;
    LatticeSpec physical;  // L modes
    LatticeSpec doubled;   // 2L modes
    std::vector<Matrix> A_ops, B_ops; // extended-algebra annihilators
    std::vector<Matrix> a_ops, b_ops; // Bogoliubov images / commutant partners
    Vector omega;          // vacuum
    Matrix W;              // parity
    AntilinearMap J;       // modular conjugation

    long dim() const { return 1L << (2 * L); }

    // Represent a physical-space operator (2^L x 2^L) through the a-operators
    // on the doubled space, via its Majorana-monomial expansion.
    Matrix embed(const Matrix& physical_op) const;
    // Inverse of embed on the a-algebra.
    Matrix restrict(const Matrix& doubled_op) const;

    Complex tracial_expectation(const Matrix& P) const;

    // V' = J V J, an element of the commutant of the a-algebra.
    Matrix commutant_of(const Matrix& V) const { return J.conjugate_operator(V); }

    Matrix smeared_a(const SmearingVector& f) const;
    Matrix smeared_b(const SmearingVector& f) const;
    Matrix smeared_A(const SmearingVector& f) const;
    Matrix smeared_B(const SmearingVector& f) const;

  private:
    friend DoubledSystem build_doubled(int, long);
    // Majorana-monomial machinery behind embed/restrict and the J build.
    // Monomials are indexed by subset masks over the 2L physical Majoranas.
    std::vector<Matrix> phys_monomials;  // on the 2^L physical space
    std::vector<Matrix> a_majoranas;     // the 2L Majoranas of the a-modes, doubled rep
    std::vector<Vector> monomial_vectors; // mon_S |Omega> for every subset mask

    Matrix doubled_monomial(unsigned long mask) const;
};

// Memory budget caps the doubled dimension 4^L.
DoubledSystem build_doubled(int L, long max_dim = 1L << 14);

// H_d = H_a - J H_a J for H_phys represented through the a-operators.
// Requires H_phys gauge invariant (equal creator and annihilator counts).
Matrix doubled_hamiltonian(const HamiltonianSpec& H_phys, const DoubledSystem& sys);
Matrix doubled_hamiltonian(const Matrix& H_phys_matrix, const DoubledSystem& sys);

struct UPResult {
    Matrix U;   // V V' W, self-adjoint unitary
    Matrix P;   // (1 + U)/2
    double closed_form_deviation = 0.0; // ||P - (A0 A0* + B0 B0*)|| (reported, not asserted)
};

UPResult build_U_and_P(const DoubledSystem& sys, const SmearingVector& f0);

struct PDerivativeReport {
    Matrix commutator;            // i [H_d, P]
    double finite_difference_gap; // Frobenius distance to the t=0 derivative stencil
    Eigen::VectorXd eigenvalues;  // of i[H_d, P], ascending
    double min_nonzero_abs;       // min |lambda| outside the numerical kernel
};

PDerivativeReport p_time_derivative(const Matrix& P, const Matrix& H_d,
                                    const EigenSystem& eig_d,
                                    double kernel_cut = 1e-8);

} // namespace tracelab
