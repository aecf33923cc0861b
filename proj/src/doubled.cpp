#include "tracelab/doubled.hpp"

namespace tracelab {

namespace {

const Complex kImag(0.0, 1.0);

// Majorana pair for one mode: m_{2x} = a_x + a*_x, m_{2x+1} = -i(a_x - a*_x).
std::vector<Matrix> majoranas_from(const std::vector<Matrix>& annihilators) {
    std::vector<Matrix> m;
    m.reserve(2 * annihilators.size());
    for (const auto& a : annihilators) {
        m.push_back(a + a.adjoint());
        m.push_back(-kImag * (a - a.adjoint()));
    }
    return m;
}

Matrix monomial(const std::vector<Matrix>& majoranas, unsigned long mask, long dim) {
    Matrix out = Matrix::Identity(dim, dim);
    for (size_t i = 0; i < majoranas.size(); ++i)
        if (mask & (1UL << i)) out = out * majoranas[i];
    return out;
}

} // namespace

Matrix DoubledSystem::doubled_monomial(unsigned long mask) const {
    return monomial(a_majoranas, mask, dim());
}

DoubledSystem build_doubled(int L, long max_dim) {
    if (L < 1) throw std::invalid_argument("build_doubled: L must be >= 1");
    const long dim = 1L << (2 * L);
    if (dim > max_dim)
        throw std::length_error("build_doubled: 4^L exceeds the memory budget");

    DoubledSystem sys;
    sys.L = L;
    sys.physical = LatticeSpec(L);
    sys.doubled = LatticeSpec(2 * L);

    for (int x = 0; x < L; ++x) {
        sys.A_ops.push_back(jw_annihilator(x, sys.doubled).matrix);
        sys.B_ops.push_back(jw_annihilator(L + x, sys.doubled).matrix);
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (int x = 0; x < L; ++x)
        sys.a_ops.push_back(s * (sys.A_ops[x] + sys.B_ops[x].adjoint()));

    sys.omega = Vector::Zero(dim);
    sys.omega(0) = 1.0;
    sys.W = global_parity(sys.doubled).matrix;

    // Tracially orthonormal Majorana-monomial basis of the physical algebra.
    const long phys_dim = 1L << L;
    std::vector<Matrix> phys_a;
    LatticeSpec phys(L);
    for (int x = 0; x < L; ++x) phys_a.push_back(jw_annihilator(x, phys).matrix);
    std::vector<Matrix> phys_majoranas = majoranas_from(phys_a);
    sys.a_majoranas = majoranas_from(sys.a_ops);

    const unsigned long n_mon = 1UL << (2 * L);
    sys.phys_monomials.reserve(n_mon);
    sys.monomial_vectors.reserve(n_mon);
    for (unsigned long mask = 0; mask < n_mon; ++mask) {
        sys.phys_monomials.push_back(monomial(phys_majoranas, mask, phys_dim));
        // mon_S |Omega> without forming the doubled monomial matrix.
        Vector v = sys.omega;
        for (int i = 2 * L - 1; i >= 0; --i)
            if (mask & (1UL << i)) v = sys.a_majoranas[i] * v;
        sys.monomial_vectors.push_back(std::move(v));
    }

    // Modular conjugation from the cyclic action: J x|Omega> = x*|Omega> over
    // the matrix-unit basis of the physical algebra.  With v_a the vector of
    // the matrix unit e_{ij} (column index a = i*2^L + j), the antilinear map
    // is psi -> K conj(psi) with K = 2^L sum_{ij} v_{ji} v_{ij}^T.
    const long units = phys_dim * phys_dim;
    Matrix C1(n_mon, units), C2(n_mon, units);
    const double trace_norm = 1.0 / static_cast<double>(phys_dim);
    for (unsigned long mask = 0; mask < n_mon; ++mask) {
        const Matrix& pm = sys.phys_monomials[mask];
        for (long i = 0; i < phys_dim; ++i)
            for (long j = 0; j < phys_dim; ++j) {
                long col = i * phys_dim + j;
                C1(mask, col) = trace_norm * std::conj(pm(i, j));
                C2(mask, col) = trace_norm * std::conj(pm(j, i));
            }
    }
    Matrix Wmat(dim, n_mon);
    for (unsigned long mask = 0; mask < n_mon; ++mask)
        Wmat.col(mask) = sys.monomial_vectors[mask];
    Matrix V1 = Wmat * C1; // columns: embed(e_ij)|Omega>
    Matrix V2 = Wmat * C2; // columns: embed(e_ji)|Omega>
    sys.J.K = static_cast<double>(phys_dim) * V2 * V1.transpose();

    const Matrix id = Matrix::Identity(dim, dim);
    if ((sys.J.K * sys.J.K.adjoint() - id).norm() > 1e-8 * std::sqrt((double)dim) ||
        (sys.J.square() - id).norm() > 1e-8 * std::sqrt((double)dim))
        throw std::runtime_error("build_doubled: modular conjugation failed the rank check");

    // Commutant partners per the defining relation b(f) = W J a(conj(f)) J.
    for (int x = 0; x < L; ++x)
        sys.b_ops.push_back(sys.W * sys.J.conjugate_operator(sys.a_ops[x]));

    return sys;
}

Matrix DoubledSystem::embed(const Matrix& physical_op) const {
    const long phys_dim = 1L << L;
    if (physical_op.rows() != phys_dim || physical_op.cols() != phys_dim)
        throw std::invalid_argument("embed: dimension mismatch");
    Matrix out = Matrix::Zero(dim(), dim());
    const double trace_norm = 1.0 / static_cast<double>(phys_dim);
    for (unsigned long mask = 0; mask < phys_monomials.size(); ++mask) {
        Complex coef = trace_norm * (phys_monomials[mask].adjoint() * physical_op).trace();
        if (std::abs(coef) < 1e-15) continue;
        out += coef * doubled_monomial(mask);
    }
    return out;
}

Matrix DoubledSystem::restrict(const Matrix& doubled_op) const {
    const long phys_dim = 1L << L;
    if (doubled_op.rows() != dim())
        throw std::invalid_argument("restrict: dimension mismatch");
    Vector image = doubled_op * omega;
    Matrix out = Matrix::Zero(phys_dim, phys_dim);
    for (unsigned long mask = 0; mask < phys_monomials.size(); ++mask) {
        Complex coef = monomial_vectors[mask].dot(image);
        if (std::abs(coef) < 1e-15) continue;
        out += coef * phys_monomials[mask];
    }
    return out;
}

Complex DoubledSystem::tracial_expectation(const Matrix& P) const {
    if (P.rows() != dim())
        throw std::invalid_argument("tracial_expectation: dimension mismatch");
    return omega.dot(P * omega);
}

Matrix DoubledSystem::smeared_a(const SmearingVector& f) const {
    if (f.size() != L) throw std::invalid_argument("smeared_a: length mismatch");
    Matrix out = Matrix::Zero(dim(), dim());
    for (int x = 0; x < L; ++x) out += f(x) * a_ops[x];
    return out;
}

Matrix DoubledSystem::smeared_b(const SmearingVector& f) const {
    if (f.size() != L) throw std::invalid_argument("smeared_b: length mismatch");
    Matrix out = Matrix::Zero(dim(), dim());
    for (int x = 0; x < L; ++x) out += f(x) * b_ops[x];
    return out;
}

Matrix DoubledSystem::smeared_A(const SmearingVector& f) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (int x = 0; x < L; ++x) out += f(x) * A_ops[x];
    return out;
}

Matrix DoubledSystem::smeared_B(const SmearingVector& f) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (int x = 0; x < L; ++x) out += f(x) * B_ops[x];
    return out;
}

Matrix doubled_hamiltonian(const Matrix& H_phys_matrix, const DoubledSystem& sys) {
    const Matrix N = total_number(sys.physical).matrix;
    if (commutator(H_phys_matrix, N).norm() >
        1e-10 * std::max(1.0, H_phys_matrix.norm()))
        throw std::invalid_argument(
            "doubled_hamiltonian: H_phys must be gauge invariant ([H, N] = 0)");
    Matrix H_a = sys.embed(H_phys_matrix);
    return H_a - sys.J.conjugate_operator(H_a);
}

Matrix doubled_hamiltonian(const HamiltonianSpec& H_phys, const DoubledSystem& sys) {
    if (!(H_phys.lattice == sys.physical))
        throw std::invalid_argument("doubled_hamiltonian: lattice mismatch");
    return doubled_hamiltonian(build_hamiltonian(H_phys).matrix, sys);
}

UPResult build_U_and_P(const DoubledSystem& sys, const SmearingVector& f0) {
    if (std::abs(f0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("build_U_and_P: f0 must be normalized");
    Matrix V = sys.smeared_a(f0);
    V += V.adjoint().eval();
    Matrix Vp = sys.commutant_of(V);
    UPResult res;
    res.U = V * Vp * sys.W;
    res.P = 0.5 * (res.U + Matrix::Identity(sys.dim(), sys.dim()));
    // Candidate closed form A0 A0* + B0 B0*, reported only: as literally
    // written it is not idempotent on the joint range.
    SmearingVector fbar(f0.coefficients.conjugate());
    Matrix A0 = sys.smeared_A(f0), B0 = sys.smeared_B(fbar);
    Matrix closed = A0 * A0.adjoint() + B0 * B0.adjoint();
    res.closed_form_deviation =
        (res.P - closed).norm() / std::sqrt(static_cast<double>(sys.dim()));
    return res;
}

PDerivativeReport p_time_derivative(const Matrix& P, const Matrix& H_d,
                                    const EigenSystem& eig_d, double kernel_cut) {
    PDerivativeReport rep;
    rep.commutator = kImag * commutator(H_d, P);

    const double dt = 1e-5;
    Matrix fd = (heisenberg(P, eig_d, dt) - heisenberg(P, eig_d, -dt)) / (2.0 * dt);
    const double root_dim = std::sqrt(static_cast<double>(P.rows()));
    rep.finite_difference_gap = (rep.commutator - fd).norm() / root_dim;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(rep.commutator);
    rep.eigenvalues = solver.eigenvalues();
    rep.min_nonzero_abs = std::numeric_limits<double>::infinity();
    for (long i = 0; i < rep.eigenvalues.size(); ++i) {
        double a = std::abs(rep.eigenvalues(i));
        if (a > kernel_cut) rep.min_nonzero_abs = std::min(rep.min_nonzero_abs, a);
    }
    if (!std::isfinite(rep.min_nonzero_abs)) rep.min_nonzero_abs = 0.0;
    return rep;
}

} // namespace tracelab
