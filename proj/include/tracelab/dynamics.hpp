#pragma once

#include <vector>

#include "tracelab/fock.hpp"

namespace tracelab {

/// Spectral decomposition H = V diag(E) V^dag with eigenvalues clustered into
/// degeneracy groups at a gap tolerance.
struct EigenSystem {
    Eigen::VectorXd eigenvalues;   // ascending
    Matrix eigenvectors;           // unitary, columns
    std::vector<std::vector<int>> groups;
    double gap_tolerance = 1e-9;

    long dim() const { return eigenvalues.size(); }
    // e^{iHt}
    Matrix propagator(double t) const;
};

EigenSystem eigendecompose(const Matrix& H, double gap_tolerance = 1e-9);
EigenSystem eigendecompose(const FockOperator& H, double gap_tolerance = 1e-9);

// Heisenberg evolution tau_t A = e^{iHt} A e^{-iHt}.
FockOperator heisenberg(const FockOperator& A, const EigenSystem& eig, double t);
Matrix heisenberg(const Matrix& A, const EigenSystem& eig, double t);

// Single-particle propagator e^{iht} for Hermitian h.
Matrix single_particle_propagator(const Matrix& h, double t);

// Quasifree fast path: the Heisenberg image of a(f) under the second
// quantization of h.  With a(f) = sum f(x) a_x and tau_t A = e^{iHt}Ae^{-iHt}
// the smearing evolves by the complex conjugate of e^{iht}: tau_t a(f) =
// a(conj(e^{iht}) f).  Magnitudes of propagator entries match the textbook
// a(e^{iht}f) rule.
FockOperator quasifree_heisenberg(const SmearingVector& f, const Matrix& h, double t,
                                  const LatticeSpec& lattice);
SmearingVector quasifree_evolve_smearing(const SmearingVector& f, const Matrix& h,
                                         double t);

// Invariant (eta) mean: spectral pinching sum_E P_E A P_E over degeneracy
// groups.  Idempotent, trace-preserving, output commutes with H.
FockOperator eta_mean(const FockOperator& A, const EigenSystem& eig);
Matrix eta_mean(const Matrix& A, const EigenSystem& eig);

struct SpectralAtom {
    double frequency = 0.0;
    Complex weight{0.0, 0.0};
};

/// Atomic decomposition of t -> <state| A^dag tau_t B |state> over Bohr
/// frequencies E_i - E_j.  Weights are complex in general; for A = B and an
/// eigenvector state they are nonnegative reals.
struct SpectralMeasure {
    std::vector<SpectralAtom> atoms; // ascending frequency

    Complex evaluate(double t) const;
    Complex weight_sum() const;
};

SpectralMeasure correlation_spectrum(const FockOperator& A, const FockOperator& B,
                                     const EigenSystem& eig, const Vector& state,
                                     double freq_tolerance = 1e-9);

} // namespace tracelab
