#pragma once

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <vector>

#include "tracelab/lattice.hpp"

namespace tracelab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Parity { even, odd, mixed };

enum class NormKind { spectral, frobenius };

// Default tolerance for algebraic identity checks.
inline constexpr double kAlgebraTol = 1e-10;

/// Smearing coefficients f(x), one per lattice site.  a(f) = sum_x f(x) a_x.
struct SmearingVector {
    Vector coefficients;

    SmearingVector() = default;
    explicit SmearingVector(Vector c) : coefficients(std::move(c)) {}
    static SmearingVector delta(int x, int L);

    int size() const { return static_cast<int>(coefficients.size()); }
    double norm() const { return coefficients.norm(); }
    Complex operator()(int x) const { return coefficients(x); }
};

// <f|g> = sum_x conj(f(x)) g(x); conjugation on the first slot.
Complex inner(const SmearingVector& f, const SmearingVector& g);

/// Dense operator on the 2^L-dimensional Fock space with parity grade and
/// support-window metadata.
struct FockOperator {
    Matrix matrix;
    LatticeSpec lattice;
    Parity parity = Parity::mixed;
    std::set<int> support;

    FockOperator() = default;
    FockOperator(Matrix m, LatticeSpec lat, Parity p, std::set<int> supp)
        : matrix(std::move(m)), lattice(lat), parity(p), support(std::move(supp)) {}

    long dim() const { return matrix.rows(); }
    FockOperator adjoint() const;
};

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(Complex c, const FockOperator& a);

// Jordan-Wigner represented annihilation operator a_x.  The sign string acts
// on sites strictly left of x (lower indices); site 0 is the most significant
// tensor factor.
FockOperator jw_annihilator(int x, const LatticeSpec& lattice);
FockOperator jw_creator(int x, const LatticeSpec& lattice);

// Number operator n_x = a*_x a_x.
FockOperator number_operator(int x, const LatticeSpec& lattice);
// Total number operator N = sum_x n_x.
FockOperator total_number(const LatticeSpec& lattice);

// Global parity Pi_x (1 - 2 n_x).
FockOperator global_parity(const LatticeSpec& lattice);

FockOperator identity_operator(const LatticeSpec& lattice);

// a(f) = sum_x f(x) a_x.  Satisfies {a(f), a*(g)} = inner(g, f) * 1.
FockOperator smeared_annihilator(const SmearingVector& f, const LatticeSpec& lattice);
FockOperator smeared_creator(const SmearingVector& f, const LatticeSpec& lattice);

// U_0 = a(f0) + a*(f0); requires ||f0|| = 1 so that U_0^2 = 1.
FockOperator local_unitary_u0(const SmearingVector& f0, const LatticeSpec& lattice);

// spectral: largest singular value.  frobenius: root-sum-square of entries
// scaled by 2^{-L/2} so that ||1|| = 1.
double operator_norm(const FockOperator& A, NormKind kind = NormKind::spectral);
double operator_norm(const Matrix& A, NormKind kind, const LatticeSpec& lattice);

// Recompute parity grade and minimal support from commutation tests,
// ignoring the stored metadata.
std::pair<Parity, std::set<int>> parity_and_support_of(const FockOperator& A,
                                                       double tol = kAlgebraTol);

// One-site cyclic shift unitary: S a_x S^dag = a_{x+1 mod L}.  Periodic only.
Matrix shift_unitary(const LatticeSpec& lattice);

Matrix commutator(const Matrix& A, const Matrix& B);
Matrix anticommutator(const Matrix& A, const Matrix& B);

} // namespace tracelab
