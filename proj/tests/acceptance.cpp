// Acceptance gate: one pass/fail line per criterion, exit code = failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "tracelab/csvio.hpp"
#include "tracelab/diagnostics.hpp"
#include "tracelab/doubled.hpp"
#include "tracelab/runner.hpp"
#include "tracelab/twist.hpp"

using namespace tracelab;

namespace {

int g_failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void report(int id, const char* what, bool ok, double value, double budget_s,
            double elapsed_s) {
    if (!ok) ++g_failures;
    bool in_budget = budget_s <= 0.0 || elapsed_s < budget_s;
    if (budget_s > 0.0 && !in_budget && ok) {
        ok = false;
        ++g_failures;
    }
    std::printf("%s  criterion %2d: %s (worst %.3e%s%.2fs)\n", ok ? "PASS" : "FAIL",
                id, what, value, budget_s > 0.0 ? ", " : ", ", elapsed_s);
}

Vector random_unit(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

Matrix random_matrix(long n, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Matrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

// 1. canonical anticommutation relations for every mode pair, L <= 6
void criterion_car() {
    double t0 = now_seconds();
    double worst = 0.0;
    for (int L = 1; L <= 6; ++L) {
        LatticeSpec lat(L);
        Matrix id = Matrix::Identity(lat.dim(), lat.dim());
        std::vector<Matrix> a(L);
        for (int x = 0; x < L; ++x) a[x] = jw_annihilator(x, lat).matrix;
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y) {
                worst = std::max(worst, anticommutator(a[x], a[y]).norm());
                double delta = (x == y) ? 1.0 : 0.0;
                worst = std::max(
                    worst,
                    (anticommutator(a[x], Matrix(a[y].adjoint())) - delta * id)
                        .norm());
            }
    }
    report(1, "CAR relations, all pairs, L <= 6, < 1e-12", worst < 1e-12, worst,
           5.0, now_seconds() - t0);
}

// 2. U0 involution for random normalized smearings
void criterion_u0() {
    double t0 = now_seconds();
    LatticeSpec lat(4);
    Matrix id = Matrix::Identity(lat.dim(), lat.dim());
    std::mt19937 rng(2024);
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        SmearingVector f(random_unit(4, rng));
        Matrix u = local_unitary_u0(f, lat).matrix;
        worst = std::max(worst, (u * u - id).norm());
        worst = std::max(worst, (u - u.adjoint()).norm());
    }
    report(2, "U0^2 = 1 for 10 random f0, L = 4, < 1e-12", worst < 1e-12, worst,
           0.0, now_seconds() - t0);
}

// 3. quasifree single-particle fast path vs full Heisenberg evolution, L = 8
void criterion_quasifree_oracle() {
    double t0 = now_seconds();
    LatticeSpec lat(8);
    HamiltonianSpec spec = quasifree_benchmark(lat);
    Matrix h = single_particle_matrix(spec.kernel, lat);
    EigenSystem eig = eigendecompose(build_hamiltonian(spec));
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> tdist(0.0, 3.0);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        SmearingVector f(random_unit(8, rng));
        double t = tdist(rng);
        Matrix slow = heisenberg(smeared_annihilator(f, lat), eig, t).matrix;
        Matrix fast = quasifree_heisenberg(f, h, t, lat).matrix;
        worst = std::max(worst, (slow - fast).norm());
    }
    report(3, "quasifree oracle vs full Heisenberg, L = 8, < 1e-10",
           worst < 1e-10, worst, 60.0, now_seconds() - t0);
}

// 4. free-fermion propagator against the Bessel-function analytic oracle
void criterion_bessel() {
    double t0 = now_seconds();
    LatticeSpec lat(256);
    Matrix h = single_particle_matrix(quasifree_benchmark(lat).kernel, lat);
    const double t = 5.0;
    Matrix u = single_particle_propagator(h, t);
    double worst = 0.0;
    for (int x = -10; x <= 10; ++x) {
        double numeric = std::abs(u(lat.wrap(x), 0));
        double exact = std::abs(std::cyl_bessel_j(std::abs(x), 2.0 * t));
        worst = std::max(worst, std::abs(numeric - exact));
    }
    report(4, "nearest-neighbor propagator vs |J_x(2t)|, L = 256, < 1e-8",
           worst < 1e-8, worst, 1.0, now_seconds() - t0);
}

// 5. the doubled vacuum implements the normalized trace
void criterion_tracial() {
    double t0 = now_seconds();
    DoubledSystem sys = build_doubled(3);
    const long d_phys = 1L << 3;
    std::mt19937 rng(5);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        Matrix X = random_matrix(d_phys, rng);
        Complex vac = sys.omega.dot(sys.embed(X) * sys.omega);
        worst = std::max(worst, std::abs(vac - X.trace() / double(d_phys)));
    }
    for (int rep = 0; rep < 50; ++rep) {
        Matrix X = sys.embed(random_matrix(d_phys, rng));
        Matrix Y = sys.embed(random_matrix(d_phys, rng));
        Complex xy = sys.omega.dot(X * Y * sys.omega);
        Complex yx = sys.omega.dot(Y * X * sys.omega);
        worst = std::max(worst, std::abs(xy - yx));
    }
    report(5, "vacuum = 2^-L tr on 100 polynomials + trace property, L = 3",
           worst < 1e-10, worst, 0.0, now_seconds() - t0);
}

// 6. doubled-Hamiltonian and modular-conjugation identities at L = 2
void criterion_doubled_identities() {
    double t0 = now_seconds();
    DoubledSystem sys = build_doubled(2);
    Matrix Hd = doubled_hamiltonian(interacting_benchmark(sys.physical), sys);
    double worst_vac = (Hd * sys.omega).norm();
    double worst_j = (sys.J.conjugate_operator(Hd) + Hd).norm();
    std::mt19937 rng(6);
    double worst_modular = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        SmearingVector f(random_unit(2, rng));
        SmearingVector fbar(f.coefficients.conjugate());
        Matrix lhs = sys.J.conjugate_operator(sys.smeared_a(fbar));
        Matrix rhs = sys.W * sys.smeared_b(f);
        worst_modular = std::max(worst_modular, (lhs - rhs).norm());
    }
    double worst_cross = 0.0;
    Matrix id = Matrix::Identity(sys.dim(), sys.dim());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double delta = (x == y) ? 1.0 : 0.0;
            worst_cross = std::max(
                worst_cross, anticommutator(sys.a_ops[x], sys.b_ops[y]).norm());
            worst_cross = std::max(
                worst_cross,
                anticommutator(sys.a_ops[x], Matrix(sys.b_ops[y].adjoint()))
                    .norm());
            worst_cross = std::max(
                worst_cross,
                (anticommutator(sys.b_ops[x], Matrix(sys.b_ops[y].adjoint()))
                 - delta * id).norm());
        }
    bool ok = worst_vac < 1e-10 && worst_j < 1e-10 && worst_modular < 1e-9
              && worst_cross < 1e-12;
    report(6, "H_d Omega = 0, J H_d J = -H_d, J a J = W b, cross relations",
           ok, std::max({worst_vac, worst_j, worst_modular, worst_cross}), 5.0,
           now_seconds() - t0);
}

// 7. doubled dynamics restricts to the physical dynamics
void criterion_dynamics_consistency() {
    double t0 = now_seconds();
    DoubledSystem sys = build_doubled(2);
    HamiltonianSpec spec = interacting_benchmark(sys.physical);
    EigenSystem eig_d = eigendecompose(doubled_hamiltonian(spec, sys));
    EigenSystem eig_p = eigendecompose(build_hamiltonian(spec));
    std::mt19937 rng(7);
    double worst = 0.0;
    for (double t : {0.5, 1.5, 3.0}) {
        Matrix X = random_matrix(1L << 2, rng);
        Matrix via = sys.restrict(heisenberg(sys.embed(X), eig_d, t));
        worst = std::max(worst, (via - heisenberg(X, eig_p, t)).norm());
    }
    report(7, "tau_t through the doubling matches the physical tau_t, L = 2",
           worst < 1e-9, worst, 0.0, now_seconds() - t0);
}

// 8. U = V V' W and P = (1+U)/2 with the derivative identity
void criterion_up() {
    double t0 = now_seconds();
    DoubledSystem sys = build_doubled(2);
    UPResult up = build_U_and_P(sys, SmearingVector::delta(0, 2));
    Matrix id = Matrix::Identity(sys.dim(), sys.dim());
    double w_sa = (up.U - up.U.adjoint()).norm();
    double w_unit = (up.U * up.U - id).norm();
    double w_proj = (up.P * up.P - up.P).norm();
    Matrix Hd = doubled_hamiltonian(interacting_benchmark(sys.physical), sys);
    PDerivativeReport rep = p_time_derivative(up.P, Hd, eigendecompose(Hd));
    bool ok = w_sa < 1e-10 && w_unit < 1e-10 && w_proj < 1e-10
              && rep.finite_difference_gap < 1e-7;
    report(8, "U self-adjoint unitary, P idempotent, i[H_d,P] = dP/dt", ok,
           std::max({w_sa, w_unit, w_proj, rep.finite_difference_gap}), 0.0,
           now_seconds() - t0);
}

// 9. shift covariance of the twisted evolution
void criterion_covariance() {
    double t0 = now_seconds();
    LatticeSpec lat(6);
    TwistAngle g = TwistAngle::quantum(1, lat);
    std::vector<double> times{0.5, 1.0, 2.0};
    double good = covariance_check(g, interacting_benchmark(lat), times);
    HamiltonianSpec bad = quasifree_benchmark(lat);
    bad.interactions = {InteractionTerm{{0, 1}, {0, 2}, {1.0, 0.0}}};
    double violation = covariance_check(g, bad, times, /*validate=*/false);
    bool ok = good < 1e-9 && violation > 1e-3;
    report(9, "twisted evolution shift covariance; violator detected", ok,
           good, 0.0, now_seconds() - t0);
}

// 10. strict localization under a purely diagonal Hamiltonian
void criterion_strict_localization() {
    double t0 = now_seconds();
    LatticeSpec lat(8);
    HamiltonianSpec spec;
    spec.lattice = lat;
    spec.gge_terms = {GgeTerm{{0}, 1.0}, GgeTerm{{0, 1}, 0.4}};
    EigenSystem eig = eigendecompose(build_hamiltonian(spec));
    FockOperator A = local_unitary_u0(SmearingVector::delta(0, 8), lat);
    std::vector<double> times{0.7, 5.0, 13.0, 29.0, 50.0};
    DecayCurve loc = localization_radius(A, eig, times, 0.05);
    bool constant = true;
    for (double v : loc.values) constant = constant && v == loc.values[0];
    DecayCurve far = commutator_decay(A, number_operator(4, lat), eig,
                                      {0.0, 10.0, 25.0, 50.0});
    double worst = 0.0;
    for (double v : far.values) worst = std::max(worst, v);
    bool ok = constant && !loc.window_exceeded && worst < 1e-10;
    report(10, "diagonal model stays strictly localized over t <= 50, L = 8",
           ok, worst, 0.0, now_seconds() - t0);
}

// 11. interacting commutators stay large where quasifree ones decay (pinned)
void criterion_contrast() {
    double t0 = now_seconds();
    LatticeSpec lat(8);
    FockOperator A = local_unitary_u0(SmearingVector::delta(0, 8), lat);
    std::vector<double> times;
    for (int k = 0; k <= 20; ++k) times.push_back(0.1 * k);
    auto window_min = [&](const HamiltonianSpec& s) {
        EigenSystem eig = eigendecompose(build_hamiltonian(s));
        DecayCurve c = anticommutator_decay(A, A, eig, times);
        double m = c.values[0];
        for (double v : c.values) m = std::min(m, v);
        return m;
    };
    double mq = window_min(quasifree_benchmark(lat));
    double mi = window_min(interacting_benchmark(lat));
    // regression pins frozen from the first oracle run
    const double pin_q = 0.0053783906147596;
    const double pin_i = 1.4107876524840;
    bool ok = mi >= mq && std::abs(mq - pin_q) < 1e-6 * pin_q
              && std::abs(mi - pin_i) < 1e-6 * pin_i;
    report(11, "window-min contrast quasifree vs interacting, pinned, L = 8",
           ok, mi - mq, 0.0, now_seconds() - t0);
}

// 12. eta-mean properties plus a numerical Cesaro cross-check
void criterion_eta_mean() {
    double t0 = now_seconds();
    LatticeSpec lat(4);
    EigenSystem eig = eigendecompose(build_hamiltonian(interacting_benchmark(lat)));
    std::mt19937 rng(12);
    Matrix A = random_matrix(lat.dim(), rng);
    Matrix m = eta_mean(A, eig);
    Matrix H = build_hamiltonian(interacting_benchmark(lat)).matrix;
    double w_comm = commutator(m, H).norm();
    double w_idem = (eta_mean(m, eig) - m).norm();
    double w_trace = std::abs(m.trace() - A.trace());

    // Cesaro average under a nondegenerate diagonal Hamiltonian: weights
    // 3 * 2^x make every occupation pattern a distinct eigenvalue, gap 3
    FockOperator Hn = Complex(3.0, 0.0) * number_operator(0, lat);
    for (int x = 1; x < 4; ++x)
        Hn = Hn + Complex(3.0 * (1 << x), 0.0) * number_operator(x, lat);
    EigenSystem eign = eigendecompose(Hn);
    Matrix B = random_matrix(lat.dim(), rng);
    B /= B.norm();
    const double T = 200.0;
    const int steps = 40000;
    Matrix acc = Matrix::Zero(lat.dim(), lat.dim());
    for (int k = 0; k < steps; ++k)
        acc += heisenberg(B, eign, (k + 0.5) * T / steps);
    acc /= double(steps);
    double w_cesaro = (acc - eta_mean(B, eign)).norm();
    bool ok = w_comm < 1e-10 && w_idem < 1e-12 && w_trace < 1e-10
              && w_cesaro < 1e-2;
    report(12, "eta-mean invariance/idempotence/trace + Cesaro at T = 200", ok,
           w_cesaro, 0.0, now_seconds() - t0);
}

// 13. local eigenoperator probe with expected minimizers and a pinned residual
void criterion_eigenoperator() {
    double t0 = now_seconds();
    LatticeSpec lat(4);
    HamiltonianSpec gge;
    gge.lattice = lat;
    gge.gge_terms = {GgeTerm{{0, 1}, 1.0}};
    EigenoperatorResult rg =
        local_eigenoperator_residual({0}, build_hamiltonian(gge), lat);
    bool gge_ok = rg.residual < 1e-10 && std::abs(rg.energy) < 1e-10
                  && rg.minimizer_label.find("m0 m1") != std::string::npos;

    const double mu = 0.83;
    FockOperator Hn = Complex(mu, 0.0) * total_number(lat);
    EigenoperatorResult rn = local_eigenoperator_residual({0}, Hn, lat);
    bool gauge_ok = rn.residual < 1e-10 && std::abs(rn.energy + mu) < 1e-10;

    LatticeSpec lat6(6);
    EigenoperatorResult ri = local_eigenoperator_residual(
        {0, 1}, build_hamiltonian(interacting_benchmark(lat6)), lat6);
    const double pin = 1.4675119257135327; // frozen from the first oracle run
    bool pin_ok = ri.residual > 0.0 && std::abs(ri.residual - pin) < 1e-6 * pin;
    report(13, "eigenoperator probe: exact minimizers + pinned residual",
           gge_ok && gauge_ok && pin_ok, ri.residual, 0.0, now_seconds() - t0);
}

// 14. byte-identical artifacts across repeated runs
void criterion_determinism() {
    double t0 = now_seconds();
    namespace fs = std::filesystem;
    bool ok = true;
    for (const char* name : {"interacting_decay", "doubled_checks"}) {
        ScenarioConfig cfg = parse_config(
            std::string("[scenario]\nname = ") + name
            + "\n[lattice]\nL = 3\n[kernel]\nterm = 1 : 1 0\n"
              "[interaction]\nterm = 0,1 ; 1,0 ; 0.5 0\n"
              "[time]\nstart = 0\nend = 1.5\nsteps = 7\n");
        cfg.out_dir = "/tmp/tracelab_acc_a";
        RunManifest m1 = run_scenario(cfg);
        cfg.out_dir = "/tmp/tracelab_acc_b";
        cfg.threads = 3;
        RunManifest m2 = run_scenario(cfg);
        ok = ok && !m1.checksums.empty();
        for (const auto& [file, sum] : m1.checksums)
            ok = ok && m2.checksums.at(file) == sum
                 && read_file("/tmp/tracelab_acc_a/" + file)
                        == read_file("/tmp/tracelab_acc_b/" + file);
        fs::remove_all("/tmp/tracelab_acc_a");
        fs::remove_all("/tmp/tracelab_acc_b");
    }
    report(14, "scenario reruns are byte identical", ok, ok ? 0.0 : 1.0, 0.0,
           now_seconds() - t0);
}

} // namespace

int main() {
    criterion_car();
    criterion_u0();
    criterion_quasifree_oracle();
    criterion_bessel();
    criterion_tracial();
    criterion_doubled_identities();
    criterion_dynamics_consistency();
    criterion_up();
    criterion_covariance();
    criterion_strict_localization();
    criterion_contrast();
    criterion_eta_mean();
    criterion_eigenoperator();
    criterion_determinism();
    std::printf("%d of 14 criteria passed\n", 14 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
