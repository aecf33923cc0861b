#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tracelab/dynamics.hpp"

namespace tracelab {

enum class Quantity {
    commutator_norm,
    anticommutator_norm,
    localization_radius,
    clustering_defect,
};

/// Sampled time series of one diagnostic with run metadata.
struct DecayCurve {
    std::vector<double> times;
    std::vector<double> values;
    Quantity quantity = Quantity::commutator_norm;
    NormKind norm_kind = NormKind::spectral;
    LatticeSpec lattice;
    std::string hamiltonian_digest;
    std::string operator_description;
    bool window_exceeded = false;
};

/// Multi-time clustering quantities with the constant
/// product bound for comparison.
struct ClusterReport {
    std::vector<double> times;
    std::vector<double> defect;       // |w(A tau_t B C tau_t D) - w(AC) w(BD)|
    std::vector<double> eta_quantity; // |w(A tau_t B A* tau_t B*)|
    double bound = 0.0;               // w(AA*) w(BB*)
};

using Expectation = std::function<Complex(const Matrix&)>;

// omega(X) = <state|X|state>.
Expectation vector_state(const Vector& state);
// Normalized trace omega(X) = 2^{-L} tr X.
Expectation tracial_state(const LatticeSpec& lattice);

// values[i] = ||[tau_{t_i} A, B]||.  At least one of A, B must be even.
DecayCurve commutator_decay(const FockOperator& A, const FockOperator& B,
                            const EigenSystem& eig, const std::vector<double>& times,
                            NormKind kind = NormKind::spectral);

// values[i] = ||{tau_{t_i} A, B}|| for odd A, B.
DecayCurve anticommutator_decay(const FockOperator& A, const FockOperator& B,
                                const EigenSystem& eig, const std::vector<double>& times,
                                NormKind kind = NormKind::spectral);

// Trace-compatible conditional expectation onto the subalgebra of `window`:
// partial trace over the complement tensored with the normalized identity.
Matrix conditional_expectation(const Matrix& A, const std::vector<int>& window,
                               const LatticeSpec& lattice);

// Smallest window half-width r (windows centered on the initial support of A,
// grown symmetrically) such that ||tau_t A - E_window(tau_t A)||_frob
// <= epsilon ||A||_frob.  Radius L with `window_exceeded` when none suffices.
DecayCurve localization_radius(const FockOperator& A, const EigenSystem& eig,
                               const std::vector<double>& times, double epsilon);

ClusterReport multitime_cluster(const FockOperator& A, const FockOperator& B,
                                const FockOperator& C, const FockOperator& D,
                                const EigenSystem& eig, const Expectation& omega,
                                const std::vector<double>& times);

struct RecurrenceWindow {
    double t_max = 0.0;
    bool exact_recurrence = false; // commensurate spectrum detected
    double base_frequency = 0.0;   // when exact
    double min_gap = 0.0;          // smallest positive Bohr frequency
};

// Heuristic pre-recurrence horizon from the Bohr-frequency structure.
RecurrenceWindow recurrence_window(const EigenSystem& eig);

// Suggested safe horizon L/4 for unit-hopping chains.
double suggested_t_max(const LatticeSpec& lattice);

} // namespace tracelab
