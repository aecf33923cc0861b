#include "tracelab/runner.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tracelab/csvio.hpp"
#include "tracelab/diagnostics.hpp"
#include "tracelab/doubled.hpp"
#include "tracelab/twist.hpp"

namespace tracelab {

namespace {

std::string hamiltonian_digest(const HamiltonianSpec& spec) {
    ScenarioConfig echo;
    echo.hamiltonian = spec;
    return fnv1a_hex(echo.canonical_text());
}

std::string curve_csv(const DecayCurve& curve) {
    std::ostringstream out;
    out << "t,value\n";
    for (size_t i = 0; i < curve.times.size(); ++i)
        out << format_double(curve.times[i]) << ',' << format_double(curve.values[i])
            << '\n';
    return out.str();
}

// Per-time-point fan-out over a worker pool; results merged in grid order.
template <typename Fn>
std::vector<double> parallel_over_times(const std::vector<double>& times, int threads,
                                        Fn&& fn) {
    std::vector<double> values(times.size());
    if (threads <= 1) {
        for (size_t i = 0; i < times.size(); ++i) values[i] = fn(times[i]);
        return values;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < times.size(); i = next.fetch_add(1))
            values[i] = fn(times[i]);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return values;
}

struct ScenarioOutput {
    std::map<std::string, std::string> files; // name -> bytes
};

ScenarioOutput run_decay(const ScenarioConfig& cfg, bool interacting) {
    HamiltonianSpec spec = cfg.hamiltonian;
    if (!interacting) {
        spec.interactions.clear();
        spec.gge_terms.clear();
    }
    const LatticeSpec& lat = spec.lattice;
    FockOperator H = build_hamiltonian(spec);
    EigenSystem eig = eigendecompose(H);
    FockOperator A = cfg.op_a.realize(lat);
    FockOperator B = cfg.op_b.realize(lat);
    std::vector<double> times = cfg.time.points();
    const bool odd_pair = A.parity == Parity::odd && B.parity == Parity::odd;
    auto value_at = [&](double t) {
        Matrix at = heisenberg(A.matrix, eig, t);
        Matrix m = odd_pair ? anticommutator(at, B.matrix) : commutator(at, B.matrix);
        return operator_norm(m, cfg.norm, lat);
    };
    DecayCurve curve;
    curve.times = times;
    curve.values = parallel_over_times(times, cfg.threads, value_at);
    curve.quantity = odd_pair ? Quantity::anticommutator_norm : Quantity::commutator_norm;
    curve.norm_kind = cfg.norm;
    curve.lattice = lat;
    curve.hamiltonian_digest = hamiltonian_digest(spec);
    curve.operator_description = cfg.op_a.describe() + " vs " + cfg.op_b.describe();

    ScenarioOutput out;
    std::string name = interacting ? "curve_interacting.csv" : "curve_quasifree.csv";
    out.files[name] = curve_csv(curve);

    nlohmann::ordered_json side;
    side["quantity"] = odd_pair ? "anticommutator_norm" : "commutator_norm";
    side["norm"] = cfg.norm == NormKind::spectral ? "spectral" : "frobenius";
    side["operators"] = curve.operator_description;
    side["hamiltonian_digest"] = curve.hamiltonian_digest;
    side["L"] = lat.L;
    out.files[name + ".json"] = side.dump(2) + "\n";
    return out;
}

ScenarioOutput run_localization(const ScenarioConfig& cfg) {
    FockOperator H = build_hamiltonian(cfg.hamiltonian);
    EigenSystem eig = eigendecompose(H);
    FockOperator A = cfg.op_a.realize(cfg.hamiltonian.lattice);
    DecayCurve curve = localization_radius(A, eig, cfg.time.points(), cfg.epsilon);
    curve.hamiltonian_digest = hamiltonian_digest(cfg.hamiltonian);
    curve.operator_description = cfg.op_a.describe();
    ScenarioOutput out;
    out.files["curve_localization.csv"] = curve_csv(curve);
    nlohmann::ordered_json side;
    side["epsilon"] = cfg.epsilon;
    side["operator"] = curve.operator_description;
    side["hamiltonian_digest"] = curve.hamiltonian_digest;
    side["window_exceeded"] = curve.window_exceeded;
    out.files["curve_localization.csv.json"] = side.dump(2) + "\n";
    return out;
}

ScenarioOutput run_doubled_checks(const ScenarioConfig& cfg) {
    const int L = cfg.hamiltonian.lattice.L;
    DoubledSystem sys = build_doubled(L);
    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss;
    auto random_f = [&] {
        Vector f(L);
        for (int i = 0; i < L; ++i) f(i) = Complex(gauss(rng), gauss(rng));
        return SmearingVector(f);
    };
    const long d = sys.dim();
    const Matrix id = Matrix::Identity(d, d);
    std::vector<std::pair<std::string, double>> rows;

    double worst_cross = 0.0, worst_car = 0.0;
    for (int reps = 0; reps < 4; ++reps) {
        SmearingVector f = random_f(), g = random_f();
        Matrix af = sys.smeared_a(f), bg = sys.smeared_b(g);
        worst_cross = std::max(worst_cross, anticommutator(af, bg).norm());
        worst_cross = std::max(worst_cross, anticommutator(af, Matrix(bg.adjoint())).norm());
        Matrix bf = sys.smeared_b(f);
        worst_car = std::max(
            worst_car,
            (anticommutator(Matrix(bf.adjoint()), bg) - inner(f, g) * id).norm());
    }
    rows.push_back({"cross_anticommutators", worst_cross});
    rows.push_back({"commutant_car", worst_car});

    double worst_modular = 0.0;
    for (int reps = 0; reps < 4; ++reps) {
        SmearingVector f = random_f();
        SmearingVector fbar(f.coefficients.conjugate());
        Matrix lhs = sys.J.conjugate_operator(sys.smeared_a(fbar));
        Matrix rhs = sys.W * sys.smeared_b(f);
        worst_modular = std::max(worst_modular, (lhs - rhs).norm());
    }
    rows.push_back({"modular_conjugation_intertwines", worst_modular});

    rows.push_back({"two_point_function",
                    std::abs(sys.tracial_expectation(
                                 Matrix(sys.a_ops[0].adjoint() * sys.a_ops[0])) -
                             0.5)});

    Matrix Hd = doubled_hamiltonian(interacting_benchmark(LatticeSpec(L)), sys);
    rows.push_back({"doubled_h_annihilates_vacuum", (Hd * sys.omega).norm()});
    rows.push_back(
        {"doubled_h_antisymmetry", (sys.J.conjugate_operator(Hd) + Hd).norm() / d});

    UPResult up = build_U_and_P(sys, SmearingVector::delta(0, L));
    rows.push_back({"u_self_adjoint", (up.U - up.U.adjoint()).norm()});
    rows.push_back({"u_squares_to_one", (up.U * up.U - id).norm()});
    rows.push_back({"p_idempotent", (up.P * up.P - up.P).norm()});
    rows.push_back({"projection_closed_form_deviation", up.closed_form_deviation});

    ScenarioOutput out;
    std::ostringstream csv;
    csv << "check,residual\n";
    for (const auto& [name, value] : rows)
        csv << name << ',' << format_double(value) << '\n';
    out.files["residuals.csv"] = csv.str();
    return out;
}

ScenarioOutput run_twist_covariance(const ScenarioConfig& cfg) {
    TwistAngle angle = TwistAngle::quantum(cfg.twist_quantum, cfg.hamiltonian.lattice);
    std::vector<double> times = cfg.time.points();
    std::ostringstream csv;
    csv << "t,violation\n";
    for (double t : times) {
        double v = covariance_check(angle, cfg.hamiltonian, {t});
        csv << format_double(t) << ',' << format_double(v) << '\n';
    }
    ScenarioOutput out;
    out.files["covariance.csv"] = csv.str();
    return out;
}

ScenarioOutput run_eigenoperator_scan(const ScenarioConfig& cfg) {
    const LatticeSpec& lat = cfg.hamiltonian.lattice;
    FockOperator H = build_hamiltonian(cfg.hamiltonian);
    std::ostringstream csv;
    csv << "window,residual,energy,minimizer\n";
    for (int w = 1; w < lat.L; ++w) {
        std::vector<int> window;
        for (int s = 0; s < w; ++s) window.push_back(s);
        EigenoperatorResult res = local_eigenoperator_residual(window, H, lat);
        csv << "0.." << (w - 1) << ',' << format_double(res.residual) << ','
            << format_double(res.energy) << ',' << '"' << res.minimizer_label << '"'
            << '\n';
    }
    ScenarioOutput out;
    out.files["eigenoperator.csv"] = csv.str();
    return out;
}

ScenarioOutput run_multitime(const ScenarioConfig& cfg) {
    const LatticeSpec& lat = cfg.hamiltonian.lattice;
    FockOperator H = build_hamiltonian(cfg.hamiltonian);
    EigenSystem eig = eigendecompose(H);
    FockOperator A = cfg.op_a.realize(lat);
    FockOperator B = cfg.op_b.realize(lat);
    ClusterReport rep = multitime_cluster(A, B, A.adjoint(), B.adjoint(), eig,
                                          tracial_state(lat), cfg.time.points());
    std::ostringstream csv;
    csv << "t,defect,eta_quantity,bound\n";
    for (size_t i = 0; i < rep.times.size(); ++i)
        csv << format_double(rep.times[i]) << ',' << format_double(rep.defect[i]) << ','
            << format_double(rep.eta_quantity[i]) << ',' << format_double(rep.bound)
            << '\n';
    ScenarioOutput out;
    out.files["multitime.csv"] = csv.str();
    return out;
}

ScenarioOutput run_spectrum(const ScenarioConfig& cfg) {
    const int L = cfg.hamiltonian.lattice.L;
    DoubledSystem sys = build_doubled(L);
    Matrix Hd = doubled_hamiltonian(cfg.hamiltonian, sys);
    EigenSystem eig = eigendecompose(Hd);
    LatticeSpec dl = sys.doubled;
    FockOperator A(sys.embed(cfg.op_a.realize(cfg.hamiltonian.lattice).matrix), dl,
                   Parity::mixed, {});
    FockOperator B(sys.embed(cfg.op_b.realize(cfg.hamiltonian.lattice).matrix), dl,
                   Parity::mixed, {});
    SpectralMeasure measure = correlation_spectrum(A, B, eig, sys.omega);
    std::ostringstream csv;
    csv << "frequency,weight_re,weight_im\n";
    for (const auto& atom : measure.atoms)
        csv << format_double(atom.frequency) << ',' << format_double(atom.weight.real())
            << ',' << format_double(atom.weight.imag()) << '\n';
    ScenarioOutput out;
    out.files["spectrum.csv"] = csv.str();
    return out;
}

} // namespace

std::string RunManifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["artifact_version"] = artifact_version;
    doc["config"] = config_echo;
    doc["t_max_prerecurrence"] = t_max_prerecurrence;
    doc["wall_time_seconds"] = wall_time_seconds;
    nlohmann::ordered_json sums;
    for (const auto& [file, sum] : checksums) sums[file] = sum;
    doc["checksums"] = sums;
    return doc.dump(2) + "\n";
}

RunManifest run_scenario(const ScenarioConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ScenarioOutput out;
    switch (cfg.scenario) {
        case Scenario::quasifree_decay: out = run_decay(cfg, false); break;
        case Scenario::interacting_decay: out = run_decay(cfg, true); break;
        case Scenario::localization: out = run_localization(cfg); break;
        case Scenario::doubled_checks: out = run_doubled_checks(cfg); break;
        case Scenario::twist_covariance: out = run_twist_covariance(cfg); break;
        case Scenario::eigenoperator_scan: out = run_eigenoperator_scan(cfg); break;
        case Scenario::multitime: out = run_multitime(cfg); break;
        case Scenario::spectrum: out = run_spectrum(cfg); break;
    }

    RunManifest manifest;
    manifest.config_echo = cfg.canonical_text();
    manifest.t_max_prerecurrence = suggested_t_max(cfg.hamiltonian.lattice);
    for (const auto& [name, bytes] : out.files) {
        write_file(cfg.out_dir + "/" + name, bytes);
        manifest.checksums[name] = fnv1a_hex(bytes);
    }
    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(cfg.out_dir + "/manifest.json", manifest.to_json());
    return manifest;
}

namespace {

// Test hook: drops the sign string, which silently breaks anticommutation
// between different sites.
Matrix corrupted_annihilator(int x, const LatticeSpec& lattice) {
    Matrix sm(2, 2), id2 = Matrix::Identity(2, 2);
    sm << 0, 1, 0, 0;
    Matrix m = Matrix::Identity(1, 1);
    for (int s = 0; s < lattice.L; ++s) {
        Matrix factor = (s == x) ? sm : id2;
        Matrix out(m.rows() * 2, m.cols() * 2);
        out.setZero();
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j)
                out.block(2 * i, 2 * j, 2, 2) = m(i, j) * factor;
        m = out;
    }
    return m;
}

} // namespace

std::vector<CheckResult> run_checks(CheckLevel level, bool corrupt_jw) {
    std::vector<CheckResult> results;
    const int Lmax = level == CheckLevel::fast ? 3 : 6;
    std::mt19937 rng(987);
    std::normal_distribution<double> gauss;

    // CAR relations for all mode pairs.
    {
        double worst = 0.0;
        for (int L = 1; L <= Lmax; ++L) {
            LatticeSpec lat(L);
            std::vector<Matrix> a(L);
            for (int x = 0; x < L; ++x)
                a[x] = corrupt_jw ? corrupted_annihilator(x, lat)
                                  : jw_annihilator(x, lat).matrix;
            const Matrix id = Matrix::Identity(lat.dim(), lat.dim());
            for (int x = 0; x < L; ++x)
                for (int y = 0; y < L; ++y) {
                    worst = std::max(worst, anticommutator(a[x], a[y]).norm());
                    Matrix rhs = (x == y) ? id : Matrix(Matrix::Zero(lat.dim(), lat.dim()));
                    worst = std::max(
                        worst, (anticommutator(a[x], Matrix(a[y].adjoint())) - rhs).norm());
                }
        }
        results.push_back({"car_relations", worst, 1e-12});
    }

    // U0 involution for random normalized smearings.
    {
        double worst = 0.0;
        for (int L = 1; L <= std::min(Lmax, 4); ++L) {
            LatticeSpec lat(L);
            for (int rep = 0; rep < 3; ++rep) {
                Vector f(L);
                for (int i = 0; i < L; ++i) f(i) = Complex(gauss(rng), gauss(rng));
                f /= f.norm();
                FockOperator u0 = local_unitary_u0(SmearingVector(f), lat);
                worst = std::max(worst, (u0.matrix * u0.matrix -
                                         Matrix::Identity(lat.dim(), lat.dim()))
                                            .norm());
            }
        }
        results.push_back({"u0_involution", worst, 1e-12});
    }

    // Quasifree fast path against exact Heisenberg evolution.
    {
        const int L = std::min(Lmax + 2, 6);
        LatticeSpec lat(L);
        HamiltonianSpec spec = quasifree_benchmark(lat);
        Matrix h = single_particle_matrix(spec.kernel, lat);
        EigenSystem eig = eigendecompose(build_quasifree(spec.kernel, lat));
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            Vector f(L);
            for (int i = 0; i < L; ++i) f(i) = Complex(gauss(rng), gauss(rng));
            SmearingVector sf(f);
            double t = 0.3 + 0.4 * rep;
            Matrix fast = quasifree_heisenberg(sf, h, t, lat).matrix;
            Matrix slow = heisenberg(smeared_annihilator(sf, lat).matrix, eig, t);
            worst = std::max(worst, (fast - slow).norm());
        }
        results.push_back({"quasifree_oracle", worst, 1e-9});
    }

    // Tracial state: vacuum expectation vs normalized trace, and the trace
    // property, on random a-polynomials.
    {
        const int L = std::min(Lmax, 3);
        DoubledSystem sys = build_doubled(L);
        LatticeSpec phys(L);
        const long pd = phys.dim();
        auto random_poly = [&] {
            Matrix m(pd, pd);
            for (long i = 0; i < pd; ++i)
                for (long j = 0; j < pd; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
            return m;
        };
        double worst = 0.0, worst_trace = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            Matrix X = random_poly(), Y = random_poly();
            Complex via_vacuum = sys.tracial_expectation(sys.embed(X));
            Complex via_trace = X.trace() / static_cast<double>(pd);
            worst = std::max(worst, std::abs(via_vacuum - via_trace));
            Complex xy = sys.tracial_expectation(Matrix(sys.embed(X) * sys.embed(Y)));
            Complex yx = sys.tracial_expectation(Matrix(sys.embed(Y) * sys.embed(X)));
            worst_trace = std::max(worst_trace, std::abs(xy - yx));
        }
        results.push_back({"tracial_vacuum_vs_trace", worst, 1e-10});
        results.push_back({"tracial_trace_property", worst_trace, 1e-10});
    }

    // Doubled Hamiltonian identities at L = 2.
    {
        DoubledSystem sys = build_doubled(2);
        Matrix Hd = doubled_hamiltonian(interacting_benchmark(LatticeSpec(2)), sys);
        results.push_back({"doubled_h_vacuum", (Hd * sys.omega).norm(), 1e-10});
        results.push_back(
            {"doubled_h_antisymmetry",
             (sys.J.conjugate_operator(Hd) + Hd).norm(), 1e-9});
    }

    // Covariance of the twisted evolution for the position-sum family.
    {
        const int L = std::min(Lmax + 3, 6);
        LatticeSpec lat(L);
        double v = covariance_check(TwistAngle::quantum(1, lat),
                                    interacting_benchmark(lat), {0.7});
        results.push_back({"twist_covariance", v, 1e-9});
    }

    // Eta-mean is an H-commuting idempotent pinching.
    {
        const int L = std::min(Lmax, 4);
        LatticeSpec lat(L);
        FockOperator H = build_hamiltonian(interacting_benchmark(lat));
        EigenSystem eig = eigendecompose(H);
        const long d = lat.dim();
        Matrix A(d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix m1 = eta_mean(A, eig);
        double worst = commutator(m1, H.matrix).norm();
        worst = std::max(worst, (eta_mean(m1, eig) - m1).norm());
        worst = std::max(worst, std::abs(m1.trace() - A.trace()));
        results.push_back({"eta_mean_pinching", worst, 1e-9});
    }

    return results;
}

int print_checks(std::ostream& out, const std::vector<CheckResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        bool ok = r.passed();
        out << (ok ? "PASS" : "FAIL") << "  " << r.name
            << "  residual=" << format_double(r.residual)
            << "  tolerance=" << format_double(r.tolerance) << "\n";
        if (!ok) ++failures;
    }
    return failures;
}

} // namespace tracelab
