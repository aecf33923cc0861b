#include "tracelab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace tracelab {

namespace {

void check_times(const std::vector<double>& times) {
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("time grid must be strictly ascending");
}

} // namespace

Expectation vector_state(const Vector& state) {
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("vector_state: state must be normalized");
    return [state](const Matrix& X) { return Complex(state.dot(X * state)); };
}

Expectation tracial_state(const LatticeSpec& lattice) {
    const double inv_dim = 1.0 / static_cast<double>(lattice.dim());
    return [inv_dim](const Matrix& X) { return inv_dim * X.trace(); };
}

DecayCurve commutator_decay(const FockOperator& A, const FockOperator& B,
                            const EigenSystem& eig, const std::vector<double>& times,
                            NormKind kind) {
    check_times(times);
    if (A.parity == Parity::odd && B.parity == Parity::odd)
        throw std::invalid_argument(
            "commutator_decay: odd-odd pairs belong to anticommutator_decay");
    DecayCurve curve;
    curve.times = times;
    curve.quantity = Quantity::commutator_norm;
    curve.norm_kind = kind;
    curve.lattice = A.lattice;
    for (double t : times) {
        Matrix at = heisenberg(A.matrix, eig, t);
        curve.values.push_back(operator_norm(commutator(at, B.matrix), kind, A.lattice));
    }
    return curve;
}

DecayCurve anticommutator_decay(const FockOperator& A, const FockOperator& B,
                                const EigenSystem& eig, const std::vector<double>& times,
                                NormKind kind) {
    check_times(times);
    if (A.parity != Parity::odd || B.parity != Parity::odd)
        throw std::invalid_argument("anticommutator_decay: both operators must be odd");
    DecayCurve curve;
    curve.times = times;
    curve.quantity = Quantity::anticommutator_norm;
    curve.norm_kind = kind;
    curve.lattice = A.lattice;
    for (double t : times) {
        Matrix at = heisenberg(A.matrix, eig, t);
        curve.values.push_back(
            operator_norm(anticommutator(at, B.matrix), kind, A.lattice));
    }
    return curve;
}

Matrix conditional_expectation(const Matrix& A, const std::vector<int>& window,
                               const LatticeSpec& lattice) {
    const int L = lattice.L;
    const long d = lattice.dim();
    if (A.rows() != d) throw std::invalid_argument("conditional_expectation: dimension");
    std::vector<bool> keep(L, false);
    for (int s : window) {
        if (!lattice.contains(s))
            throw std::out_of_range("conditional_expectation: window site out of range");
        keep[s] = true;
    }
    // E(A)[i,j] = 2^{-|comp|} sum over complement configurations c of
    // A[i|c, j|c], nonzero only when i and j agree on the complement.
    std::vector<int> comp_bits, win_bits;
    for (int s = 0; s < L; ++s)
        (keep[s] ? win_bits : comp_bits).push_back(L - 1 - s);
    const long wd = 1L << win_bits.size();
    const long cd = 1L << comp_bits.size();
    auto assemble = [&](long w, long c) {
        long idx = 0;
        for (size_t k = 0; k < win_bits.size(); ++k)
            if (w & (1L << k)) idx |= (1L << win_bits[k]);
        for (size_t k = 0; k < comp_bits.size(); ++k)
            if (c & (1L << k)) idx |= (1L << comp_bits[k]);
        return idx;
    };
    Matrix out = Matrix::Zero(d, d);
    const double scale = 1.0 / static_cast<double>(cd);
    for (long wi = 0; wi < wd; ++wi)
        for (long wj = 0; wj < wd; ++wj) {
            Complex acc(0.0, 0.0);
            for (long c = 0; c < cd; ++c) acc += A(assemble(wi, c), assemble(wj, c));
            acc *= scale;
            if (acc == Complex(0.0, 0.0)) continue;
            for (long c = 0; c < cd; ++c) out(assemble(wi, c), assemble(wj, c)) = acc;
        }
    return out;
}

namespace {

std::vector<int> centered_window(const std::set<int>& support, int r,
                                 const LatticeSpec& lattice) {
    int lo = *support.begin(), hi = *support.rbegin();
    double center = 0.5 * (lo + hi);
    std::vector<int> window;
    for (int s = 0; s < lattice.L; ++s) {
        double dist = std::abs(s - center);
        if (lattice.boundary == Boundary::periodic)
            dist = std::min(dist, lattice.L - dist);
        if (dist <= r + 1e-9) window.push_back(s);
    }
    return window;
}

} // namespace

DecayCurve localization_radius(const FockOperator& A, const EigenSystem& eig,
                               const std::vector<double>& times, double epsilon) {
    check_times(times);
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("localization_radius: epsilon must be in (0,1)");
    std::set<int> support = A.support;
    if (support.empty()) support = parity_and_support_of(A).second;
    if (support.empty()) support = {0};
    const int r0 = (*support.rbegin() - *support.begin() + 1) / 2;
    const double ref = epsilon * operator_norm(A, NormKind::frobenius);

    DecayCurve curve;
    curve.times = times;
    curve.quantity = Quantity::localization_radius;
    curve.norm_kind = NormKind::frobenius;
    curve.lattice = A.lattice;
    for (double t : times) {
        Matrix at = heisenberg(A.matrix, eig, t);
        int radius = A.lattice.L;
        for (int r = r0; r <= A.lattice.L; ++r) {
            std::vector<int> window = centered_window(support, r, A.lattice);
            Matrix proj = conditional_expectation(at, window, A.lattice);
            double dev = operator_norm(Matrix(at - proj), NormKind::frobenius, A.lattice);
            if (dev <= ref) {
                radius = r;
                break;
            }
            if (static_cast<int>(window.size()) == A.lattice.L) {
                curve.window_exceeded = true;
                break;
            }
        }
        curve.values.push_back(static_cast<double>(radius));
    }
    return curve;
}

ClusterReport multitime_cluster(const FockOperator& A, const FockOperator& B,
                                const FockOperator& C, const FockOperator& D,
                                const EigenSystem& eig, const Expectation& omega,
                                const std::vector<double>& times) {
    check_times(times);
    if (A.dim() != eig.dim() || B.dim() != eig.dim() || C.dim() != eig.dim() ||
        D.dim() != eig.dim())
        throw std::invalid_argument("multitime_cluster: dimension mismatch");
    ClusterReport rep;
    rep.times = times;
    Complex wac = omega(Matrix(A.matrix * C.matrix));
    Complex wbd = omega(Matrix(B.matrix * D.matrix));
    rep.bound = std::abs(omega(Matrix(A.matrix * A.matrix.adjoint()))) *
                std::abs(omega(Matrix(B.matrix * B.matrix.adjoint())));
    for (double t : times) {
        Matrix bt = heisenberg(B.matrix, eig, t);
        Matrix dt = heisenberg(D.matrix, eig, t);
        rep.defect.push_back(
            std::abs(omega(Matrix(A.matrix * bt * C.matrix * dt)) - wac * wbd));
        Matrix bstar_t = heisenberg(B.matrix.adjoint(), eig, t);
        rep.eta_quantity.push_back(
            std::abs(omega(Matrix(A.matrix * bt * A.matrix.adjoint() * bstar_t))));
    }
    return rep;
}

RecurrenceWindow recurrence_window(const EigenSystem& eig) {
    RecurrenceWindow win;
    std::vector<double> levels;
    for (const auto& g : eig.groups) levels.push_back(eig.eigenvalues(g.front()));
    std::vector<double> freqs;
    for (size_t i = 0; i < levels.size(); ++i)
        for (size_t j = 0; j < i; ++j) freqs.push_back(levels[i] - levels[j]);
    if (freqs.empty()) {
        win.t_max = std::numeric_limits<double>::infinity();
        return win;
    }
    std::sort(freqs.begin(), freqs.end());
    win.min_gap = freqs.front();

    // Approximate gcd of the Bohr frequencies: commensurate spectra recur
    // exactly with period 2 pi / gcd.
    double g = freqs.front();
    bool commensurate = true;
    for (double f : freqs) {
        double r = std::fmod(f, g);
        if (r > g / 2) r = g - r;
        if (r > 1e-9 * std::max(1.0, f)) {
            // refine g by Euclid steps; fall back to incommensurate when the
            // candidate collapses
            double a = f, b = g;
            for (int it = 0; it < 64 && b > 1e-9; ++it) {
                double m = std::fmod(a, b);
                a = b;
                b = m;
            }
            if (a > 1e-6) {
                g = a;
            } else {
                commensurate = false;
                break;
            }
        }
    }
    if (commensurate && g > 1e-9) {
        win.exact_recurrence = true;
        win.base_frequency = g;
        win.t_max = 2.0 * M_PI / g;
    } else {
        win.t_max = 2.0 * M_PI / win.min_gap;
    }
    return win;
}

double suggested_t_max(const LatticeSpec& lattice) {
    return static_cast<double>(lattice.L) / 4.0;
}

} // namespace tracelab
