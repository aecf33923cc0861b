#include "tracelab/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>

namespace tracelab {

Matrix EigenSystem::propagator(double t) const {
    Vector phases(eigenvalues.size());
    for (long i = 0; i < eigenvalues.size(); ++i)
        phases(i) = std::exp(Complex(0.0, eigenvalues(i) * t));
    return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

EigenSystem eigendecompose(const Matrix& H, double gap_tolerance) {
    if ((H - H.adjoint()).norm() > 1e-9 * std::max(1.0, H.norm()))
        throw std::invalid_argument("eigendecompose: matrix is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    EigenSystem eig;
    eig.eigenvalues = solver.eigenvalues();
    eig.eigenvectors = solver.eigenvectors();
    eig.gap_tolerance = gap_tolerance;
    std::vector<int> current;
    for (long i = 0; i < eig.eigenvalues.size(); ++i) {
        if (!current.empty() &&
            eig.eigenvalues(i) - eig.eigenvalues(current.back()) > gap_tolerance) {
            eig.groups.push_back(current);
            current.clear();
        }
        current.push_back(static_cast<int>(i));
    }
    if (!current.empty()) eig.groups.push_back(current);
    return eig;
}

EigenSystem eigendecompose(const FockOperator& H, double gap_tolerance) {
    return eigendecompose(H.matrix, gap_tolerance);
}

Matrix heisenberg(const Matrix& A, const EigenSystem& eig, double t) {
    if (A.rows() != eig.dim())
        throw std::invalid_argument("heisenberg: dimension mismatch");
    Matrix U = eig.propagator(t);
    return U * A * U.adjoint();
}

FockOperator heisenberg(const FockOperator& A, const EigenSystem& eig, double t) {
    FockOperator out = A;
    out.matrix = heisenberg(A.matrix, eig, t);
    // Evolution generically enlarges the support; metadata is recomputed on
    // demand by parity_and_support_of.
    if (t != 0.0)
        for (int s = 0; s < A.lattice.L; ++s) out.support.insert(s);
    return out;
}

Matrix single_particle_propagator(const Matrix& h, double t) {
    if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm()))
        throw std::invalid_argument("single_particle_propagator: h not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Vector phases(h.rows());
    for (long i = 0; i < h.rows(); ++i)
        phases(i) = std::exp(Complex(0.0, solver.eigenvalues()(i) * t));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

SmearingVector quasifree_evolve_smearing(const SmearingVector& f, const Matrix& h,
                                         double t) {
    Matrix u = single_particle_propagator(h, t);
    return SmearingVector(u.conjugate() * f.coefficients);
}

FockOperator quasifree_heisenberg(const SmearingVector& f, const Matrix& h, double t,
                                  const LatticeSpec& lattice) {
    return smeared_annihilator(quasifree_evolve_smearing(f, h, t), lattice);
}

Matrix eta_mean(const Matrix& A, const EigenSystem& eig) {
    if (A.rows() != eig.dim())
        throw std::invalid_argument("eta_mean: dimension mismatch");
    Matrix tilde = eig.eigenvectors.adjoint() * A * eig.eigenvectors;
    Matrix pinched = Matrix::Zero(A.rows(), A.cols());
    for (const auto& g : eig.groups)
        for (int i : g)
            for (int j : g) pinched(i, j) = tilde(i, j);
    return eig.eigenvectors * pinched * eig.eigenvectors.adjoint();
}

FockOperator eta_mean(const FockOperator& A, const EigenSystem& eig) {
    FockOperator out = A;
    out.matrix = eta_mean(A.matrix, eig);
    return out;
}

Complex SpectralMeasure::evaluate(double t) const {
    Complex v(0.0, 0.0);
    for (const auto& atom : atoms) v += atom.weight * std::exp(Complex(0.0, atom.frequency * t));
    return v;
}

Complex SpectralMeasure::weight_sum() const {
    Complex v(0.0, 0.0);
    for (const auto& atom : atoms) v += atom.weight;
    return v;
}

SpectralMeasure correlation_spectrum(const FockOperator& A, const FockOperator& B,
                                     const EigenSystem& eig, const Vector& state,
                                     double freq_tolerance) {
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("correlation_spectrum: state must be normalized");
    if (A.dim() != eig.dim() || B.dim() != eig.dim() || state.size() != eig.dim())
        throw std::invalid_argument("correlation_spectrum: dimension mismatch");

    const Matrix& V = eig.eigenvectors;
    Vector c = V.adjoint() * state;
    Matrix mb = V.adjoint() * B.matrix * V;
    Vector u = V.adjoint() * (A.matrix * state); // <s|A^dag|i> = conj(u_i)

    // <s|A^dag tau_t B|s> = sum_{ij} conj(u_i) mb_{ij} c_j e^{i(E_i - E_j)t}
    std::map<long, SpectralAtom> merged; // key: frequency bucket
    const double bucket = std::max(freq_tolerance, 1e-12);
    for (long i = 0; i < eig.dim(); ++i) {
        if (std::abs(u(i)) < 1e-15) continue;
        for (long j = 0; j < eig.dim(); ++j) {
            if (std::abs(c(j)) < 1e-15) continue;
            Complex w = std::conj(u(i)) * mb(i, j) * c(j);
            if (std::abs(w) < 1e-16) continue;
            double freq = eig.eigenvalues(i) - eig.eigenvalues(j);
            long key = std::lround(freq / bucket);
            auto& atom = merged[key];
            // Weight-averaged representative frequency within the bucket.
            double total = std::abs(atom.weight) + std::abs(w);
            atom.frequency = (atom.frequency * std::abs(atom.weight) + freq * std::abs(w)) /
                             (total > 0 ? total : 1.0);
            atom.weight += w;
        }
    }
    SpectralMeasure out;
    for (const auto& [key, atom] : merged)
        if (std::abs(atom.weight) > 1e-14) out.atoms.push_back(atom);
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const SpectralAtom& a, const SpectralAtom& b) {
                  return a.frequency < b.frequency;
              });
    return out;
}

} // namespace tracelab
