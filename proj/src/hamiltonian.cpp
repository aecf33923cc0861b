#include "tracelab/hamiltonian.hpp"

#include <numeric>
#include <sstream>

namespace tracelab {

void HoppingKernel::validate() const {
    for (const auto& [d, v] : entries) {
        auto it = entries.find(-d);
        Complex mirror = (it == entries.end()) ? Complex(0.0, 0.0) : it->second;
        if (std::abs(mirror - std::conj(v)) > 1e-12) {
            std::ostringstream msg;
            msg << "HoppingKernel: f(" << -d << ") != conj(f(" << d << "))";
            throw std::invalid_argument(msg.str());
        }
    }
}

bool conserves_position_sum(const InteractionTerm& term, const LatticeSpec& lattice) {
    long cs = std::accumulate(term.creators.begin(), term.creators.end(), 0L);
    long as = std::accumulate(term.annihilators.begin(), term.annihilators.end(), 0L);
    if (lattice.boundary == Boundary::periodic) return (cs - as) % lattice.L == 0;
    return cs == as;
}

void validate_interactions(const std::vector<InteractionTerm>& terms,
                           const LatticeSpec& lattice) {
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (t.creators.size() != t.annihilators.size()) {
            std::ostringstream msg;
            msg << "interaction term " << i << ": creator/annihilator counts differ";
            throw std::invalid_argument(msg.str());
        }
        for (int x : t.creators)
            if (!lattice.contains(x))
                throw std::out_of_range("interaction term site out of range");
        for (int y : t.annihilators)
            if (!lattice.contains(y))
                throw std::out_of_range("interaction term site out of range");
        if (!conserves_position_sum(t, lattice)) {
            std::ostringstream msg;
            msg << "interaction term " << i << " (creators";
            for (int x : t.creators) msg << ' ' << x;
            msg << ", annihilators";
            for (int y : t.annihilators) msg << ' ' << y;
            msg << ") violates position-sum conservation";
            throw std::invalid_argument(msg.str());
        }
    }
}

Matrix single_particle_matrix(const HoppingKernel& kernel, const LatticeSpec& lattice) {
    kernel.validate();
    const int L = lattice.L;
    Matrix h = Matrix::Zero(L, L);
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (const auto& [d, v] : kernel.entries) {
                bool hit = lattice.boundary == Boundary::periodic
                               ? ((x - y - d) % L + L) % L == 0
                               : x - y == d;
                if (hit) h(x, y) += v;
            }
    return h;
}

FockOperator build_quasifree(const HoppingKernel& kernel, const LatticeSpec& lattice) {
    Matrix h = single_particle_matrix(kernel, lattice);
    Matrix H = Matrix::Zero(lattice.dim(), lattice.dim());
    std::set<int> supp;
    std::vector<Matrix> a(lattice.L), adag(lattice.L);
    for (int x = 0; x < lattice.L; ++x) {
        a[x] = jw_annihilator(x, lattice).matrix;
        adag[x] = a[x].adjoint();
    }
    for (int x = 0; x < lattice.L; ++x)
        for (int y = 0; y < lattice.L; ++y) {
            if (h(x, y) == Complex(0.0, 0.0)) continue;
            H += h(x, y) * adag[x] * a[y];
            supp.insert(x);
            supp.insert(y);
        }
    return FockOperator(std::move(H), lattice, Parity::even, std::move(supp));
}

FockOperator build_interaction(const std::vector<InteractionTerm>& terms,
                               const LatticeSpec& lattice, bool validate) {
    if (validate) validate_interactions(terms, lattice);
    Matrix H = Matrix::Zero(lattice.dim(), lattice.dim());
    std::set<int> supp;
    for (const auto& t : terms) {
        Matrix m = Matrix::Identity(lattice.dim(), lattice.dim());
        for (int x : t.creators) {
            m = m * jw_creator(x, lattice).matrix;
            supp.insert(x);
        }
        for (int y : t.annihilators) {
            m = m * jw_annihilator(y, lattice).matrix;
            supp.insert(y);
        }
        Matrix term = t.coefficient * m;
        H += term + term.adjoint();
    }
    return FockOperator(std::move(H), lattice, Parity::even, std::move(supp));
}

FockOperator build_gge(const std::vector<GgeTerm>& terms, const LatticeSpec& lattice) {
    const long d = lattice.dim();
    const int L = lattice.L;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
    for (const auto& t : terms) {
        if (t.sites.empty())
            throw std::invalid_argument("build_gge: empty site subset");
        for (int j : t.sites)
            if (!lattice.contains(j))
                throw std::out_of_range("build_gge: site out of range");
        for (int x = 0; x < L; ++x) {
            for (long basis = 0; basis < d; ++basis) {
                double z = 1.0;
                for (int j : t.sites) {
                    int site = lattice.wrap(j + x);
                    bool occ = basis & (1L << (L - 1 - site));
                    z *= occ ? -1.0 : 1.0; // sigma_z realized as 1 - 2n
                }
                diag(basis) += t.coefficient * z;
            }
        }
    }
    std::set<int> all;
    for (int s = 0; s < L; ++s) all.insert(s);
    return FockOperator(diag.cast<Complex>().asDiagonal(), lattice, Parity::even, all);
}

FockOperator build_hamiltonian(const HamiltonianSpec& spec, bool validate) {
    Matrix H = Matrix::Zero(spec.lattice.dim(), spec.lattice.dim());
    std::set<int> supp;
    if (!spec.kernel.empty()) {
        FockOperator q = build_quasifree(spec.kernel, spec.lattice);
        H += q.matrix;
        supp.insert(q.support.begin(), q.support.end());
    }
    if (!spec.interactions.empty()) {
        FockOperator v = build_interaction(spec.interactions, spec.lattice, validate);
        H += v.matrix;
        supp.insert(v.support.begin(), v.support.end());
    }
    if (!spec.gge_terms.empty()) {
        FockOperator g = build_gge(spec.gge_terms, spec.lattice);
        H += g.matrix;
        supp.insert(g.support.begin(), g.support.end());
    }
    return FockOperator(std::move(H), spec.lattice, Parity::even, std::move(supp));
}

std::vector<InteractionTerm> translation_orbit(const InteractionTerm& term,
                                               const LatticeSpec& lattice) {
    std::vector<InteractionTerm> orbit;
    for (int x = 0; x < lattice.L; ++x) {
        InteractionTerm t = term;
        for (int& c : t.creators) c = lattice.wrap(c + x);
        for (int& a : t.annihilators) a = lattice.wrap(a + x);
        orbit.push_back(std::move(t));
    }
    return orbit;
}

HamiltonianSpec quasifree_benchmark(const LatticeSpec& lattice) {
    HamiltonianSpec spec;
    spec.lattice = lattice;
    spec.kernel.entries = {{1, 1.0}, {-1, 1.0}};
    return spec;
}

HamiltonianSpec interacting_benchmark(const LatticeSpec& lattice) {
    HamiltonianSpec spec = quasifree_benchmark(lattice);
    // n_x n_{x+1} with unit coefficient: the term + adjoint doubling makes the
    // per-term coefficient 1/2.
    int last = lattice.boundary == Boundary::periodic ? lattice.L : lattice.L - 1;
    for (int x = 0; x < last; ++x) {
        int y = lattice.wrap(x + 1);
        if (y == x) continue; // L = 1 ring
        spec.interactions.push_back({{x, y}, {y, x}, Complex(0.5, 0.0)});
    }
    return spec;
}

} // namespace tracelab
