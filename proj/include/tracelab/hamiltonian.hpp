#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tracelab/fock.hpp"

namespace tracelab {

/// Translation-invariant hopping amplitudes f(d), keyed by displacement.
/// Self-adjointness of the quadratic part requires f(-d) = conj(f(d)).
struct HoppingKernel {
    std::map<int, Complex> entries;

    bool empty() const { return entries.empty(); }
    void validate() const;
};

/// One interaction monomial a*_{x1}..a*_{xk} a_{y1}..a_{yk}; the builder adds
/// it together with its adjoint.  Position sums of creators and annihilators
/// must agree (mod L on rings).
struct InteractionTerm {
    std::vector<int> creators;
    std::vector<int> annihilators;
    Complex coefficient{1.0, 0.0};
};

struct GgeTerm {
    std::vector<int> sites; // the subset Lambda, translated over the lattice
    double coefficient = 1.0;
};

struct HamiltonianSpec {
    LatticeSpec lattice;
    HoppingKernel kernel;
    std::vector<InteractionTerm> interactions;
    std::vector<GgeTerm> gge_terms;
};

// Checks the position-sum conservation constraint of a single term.
bool conserves_position_sum(const InteractionTerm& term, const LatticeSpec& lattice);
void validate_interactions(const std::vector<InteractionTerm>& terms,
                           const LatticeSpec& lattice);

// Hermitian L x L single-particle matrix h with h(x,y) = f(x-y)
// (displacement wrapped on rings).
Matrix single_particle_matrix(const HoppingKernel& kernel, const LatticeSpec& lattice);

// Second quantization of the kernel: sum_{x,y} f(x-y) a*_x a_y.
FockOperator build_quasifree(const HoppingKernel& kernel, const LatticeSpec& lattice);

// sum over terms of (term + adjoint).  `validate` may be disabled only for
// tests probing the covariance failure of non-conserving interactions.
FockOperator build_interaction(const std::vector<InteractionTerm>& terms,
                               const LatticeSpec& lattice, bool validate = true);

// sum_x prod_{j in Lambda} (1 - 2 n_{j+x}) f(Lambda), diagonal in the
// occupation basis.
FockOperator build_gge(const std::vector<GgeTerm>& terms, const LatticeSpec& lattice);

// Full Hamiltonian: quasifree + interaction + gge parts.
FockOperator build_hamiltonian(const HamiltonianSpec& spec, bool validate = true);

// Expands one interaction term into its L lattice translates.
std::vector<InteractionTerm> translation_orbit(const InteractionTerm& term,
                                               const LatticeSpec& lattice);

// Nearest-neighbor hopping f(+-1) = 1 plus density-density n_x n_{x+1} with
// unit coefficient: the default interacting benchmark.
HamiltonianSpec interacting_benchmark(const LatticeSpec& lattice);
HamiltonianSpec quasifree_benchmark(const LatticeSpec& lattice);

} // namespace tracelab
