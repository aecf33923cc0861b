#include "tracelab/fock.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace tracelab {

SmearingVector SmearingVector::delta(int x, int L) {
    Vector v = Vector::Zero(L);
    v(x) = 1.0;
    return SmearingVector(v);
}

Complex inner(const SmearingVector& f, const SmearingVector& g) {
    return f.coefficients.dot(g.coefficients); // Eigen dot conjugates the first argument
}

FockOperator FockOperator::adjoint() const {
    return FockOperator(matrix.adjoint(), lattice, parity, support);
}

namespace {

Parity parity_product(Parity a, Parity b) {
    if (a == Parity::mixed || b == Parity::mixed) return Parity::mixed;
    return (a == b) ? Parity::even : Parity::odd;
}

std::set<int> support_union(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> u = a;
    u.insert(b.begin(), b.end());
    return u;
}

void check_same_lattice(const FockOperator& a, const FockOperator& b) {
    if (!(a.lattice == b.lattice) || a.matrix.rows() != b.matrix.rows())
        throw std::invalid_argument("FockOperator: lattice/dimension mismatch");
}

} // namespace

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    check_same_lattice(a, b);
    return FockOperator(a.matrix * b.matrix, a.lattice, parity_product(a.parity, b.parity),
                        support_union(a.support, b.support));
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    check_same_lattice(a, b);
    Parity p = (a.parity == b.parity) ? a.parity : Parity::mixed;
    return FockOperator(a.matrix + b.matrix, a.lattice, p,
                        support_union(a.support, b.support));
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    check_same_lattice(a, b);
    Parity p = (a.parity == b.parity) ? a.parity : Parity::mixed;
    return FockOperator(a.matrix - b.matrix, a.lattice, p,
                        support_union(a.support, b.support));
}

FockOperator operator*(Complex c, const FockOperator& a) {
    return FockOperator(c * a.matrix, a.lattice, a.parity, a.support);
}

namespace {

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    return z;
}

Eigen::Matrix2cd lowering() {
    Eigen::Matrix2cd s;
    s << 0, 1, 0, 0;
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

FockOperator jw_annihilator(int x, const LatticeSpec& lattice) {
    if (!lattice.contains(x)) throw std::out_of_range("jw_annihilator: site out of range");
    Matrix m = Matrix::Identity(1, 1);
    for (int s = 0; s < lattice.L; ++s) {
        if (s < x) m = kron(m, pauli_z());
        else if (s == x) m = kron(m, lowering());
        else m = kron(m, Matrix::Identity(2, 2));
    }
    return FockOperator(std::move(m), lattice, Parity::odd, {x});
}

FockOperator jw_creator(int x, const LatticeSpec& lattice) {
    return jw_annihilator(x, lattice).adjoint();
}

FockOperator number_operator(int x, const LatticeSpec& lattice) {
    FockOperator a = jw_annihilator(x, lattice);
    FockOperator n = a.adjoint() * a;
    n.parity = Parity::even;
    n.support = {x};
    return n;
}

FockOperator total_number(const LatticeSpec& lattice) {
    const long d = lattice.dim();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
    for (long basis = 0; basis < d; ++basis)
        diag(basis) = static_cast<double>(__builtin_popcountl(basis));
    std::set<int> all;
    for (int s = 0; s < lattice.L; ++s) all.insert(s);
    return FockOperator(diag.cast<Complex>().asDiagonal(), lattice, Parity::even, all);
}

FockOperator global_parity(const LatticeSpec& lattice) {
    const long d = lattice.dim();
    Eigen::VectorXd diag(d);
    for (long basis = 0; basis < d; ++basis)
        diag(basis) = (__builtin_popcountl(basis) % 2 == 0) ? 1.0 : -1.0;
    std::set<int> all;
    for (int s = 0; s < lattice.L; ++s) all.insert(s);
    return FockOperator(diag.cast<Complex>().asDiagonal(), lattice, Parity::even, all);
}

FockOperator identity_operator(const LatticeSpec& lattice) {
    return FockOperator(Matrix::Identity(lattice.dim(), lattice.dim()), lattice,
                        Parity::even, {});
}

FockOperator smeared_annihilator(const SmearingVector& f, const LatticeSpec& lattice) {
    if (f.size() != lattice.L)
        throw std::invalid_argument("smeared_annihilator: coefficient length != L");
    Matrix m = Matrix::Zero(lattice.dim(), lattice.dim());
    std::set<int> supp;
    for (int x = 0; x < lattice.L; ++x) {
        if (f(x) == Complex(0.0, 0.0)) continue;
        m += f(x) * jw_annihilator(x, lattice).matrix;
        supp.insert(x);
    }
    return FockOperator(std::move(m), lattice, Parity::odd, std::move(supp));
}

FockOperator smeared_creator(const SmearingVector& f, const LatticeSpec& lattice) {
    FockOperator a = smeared_annihilator(f, lattice);
    return a.adjoint();
}

FockOperator local_unitary_u0(const SmearingVector& f0, const LatticeSpec& lattice) {
    if (std::abs(f0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("local_unitary_u0: f0 must be normalized");
    FockOperator a = smeared_annihilator(f0, lattice);
    FockOperator u = a + a.adjoint();
    u.parity = Parity::odd;
    return u;
}

double operator_norm(const Matrix& A, NormKind kind, const LatticeSpec& lattice) {
    if (!A.allFinite()) throw std::invalid_argument("operator_norm: non-finite entries");
    switch (kind) {
        case NormKind::spectral: {
            if (A.size() == 0) return 0.0;
            // sqrt of the top eigenvalue of A^dag A; much faster than a full
            // SVD at Fock-space dimensions
            Eigen::SelfAdjointEigenSolver<Matrix> es(A.adjoint() * A,
                                                     Eigen::EigenvaluesOnly);
            return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
        }
        case NormKind::frobenius:
            return A.norm() / std::sqrt(static_cast<double>(lattice.dim()));
    }
    throw std::logic_error("operator_norm: unknown kind");
}

double operator_norm(const FockOperator& A, NormKind kind) {
    return operator_norm(A.matrix, kind, A.lattice);
}

std::pair<Parity, std::set<int>> parity_and_support_of(const FockOperator& A, double tol) {
    const Matrix& m = A.matrix;
    const Matrix pi = global_parity(A.lattice).matrix;
    const double scale = std::max(1.0, m.norm());

    const Matrix even_part = 0.5 * (m + pi * m * pi);
    const Matrix odd_part = 0.5 * (m - pi * m * pi);
    const bool has_even = even_part.norm() > tol * scale;
    const bool has_odd = odd_part.norm() > tol * scale;
    Parity p = Parity::mixed;
    if (has_even && !has_odd) p = Parity::even;
    else if (has_odd && !has_even) p = Parity::odd;

    // Site x lies outside the support iff the even part commutes and the odd
    // part anticommutes with a_x, and both commute with n_x.
    std::set<int> supp;
    for (int x = 0; x < A.lattice.L; ++x) {
        const Matrix ax = jw_annihilator(x, A.lattice).matrix;
        const Matrix nx = number_operator(x, A.lattice).matrix;
        bool touched = commutator(even_part, ax).norm() > tol * scale ||
                       anticommutator(odd_part, ax).norm() > tol * scale ||
                       commutator(m, nx).norm() > tol * scale;
        if (touched) supp.insert(x);
    }
    return {p, supp};
}

Matrix shift_unitary(const LatticeSpec& lattice) {
    if (lattice.boundary != Boundary::periodic)
        throw std::invalid_argument("shift_unitary: periodic lattices only");
    const long d = lattice.dim();
    const int L = lattice.L;
    Matrix S = Matrix::Zero(d, d);
    // Basis state with bit (L-1-s) set <=> mode s occupied (mode 0 is the most
    // significant bit).  |n> = (a*_0)^{n_0} ... (a*_{L-1})^{n_{L-1}} |vac>.
    // Under a*_x -> a*_{x+1} the last factor a*_{L-1} becomes a*_0 and is
    // pulled to the front past the remaining occupied modes, which costs a
    // sign (-1)^{n_{L-1} * (N - n_{L-1})}.
    for (long basis = 0; basis < d; ++basis) {
        long shifted = 0;
        for (int s = 0; s < L; ++s) {
            if (basis & (1L << (L - 1 - s))) {
                int t = (s + 1) % L;
                shifted |= (1L << (L - 1 - t));
            }
        }
        int last = (basis & 1L) ? 1 : 0; // occupation of site L-1
        int rest = __builtin_popcountl(basis) - last;
        double sign = (last && (rest % 2 == 1)) ? -1.0 : 1.0;
        S(shifted, basis) = sign;
    }
    return S;
}

Matrix commutator(const Matrix& A, const Matrix& B) { return A * B - B * A; }
Matrix anticommutator(const Matrix& A, const Matrix& B) { return A * B + B * A; }

} // namespace tracelab
