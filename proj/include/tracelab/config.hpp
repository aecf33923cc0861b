#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracelab/hamiltonian.hpp"

namespace tracelab {

enum class Scenario {
    quasifree_decay,
    interacting_decay,
    localization,
    doubled_checks,
    twist_covariance,
    eigenoperator_scan,
    multitime,
    spectrum,
};

const char* scenario_name(Scenario s);
std::vector<Scenario> all_scenarios();

enum class OperatorKind { u0, bilinear, density };

struct OperatorSelector {
    OperatorKind kind = OperatorKind::u0;
    std::vector<int> sites;

    FockOperator realize(const LatticeSpec& lattice) const;
    std::string describe() const;
};

struct TimeGrid {
    double start = 0.0;
    double end = 2.0;
    int steps = 21;

    std::vector<double> points() const;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::quasifree_decay;
    HamiltonianSpec hamiltonian; // lattice + kernel + interaction + gge
    OperatorSelector op_a, op_b;
    TimeGrid time;
    NormKind norm = NormKind::spectral;
    double epsilon = 0.25;
    int twist_quantum = 1;   // g = 2*pi*k/L
    std::string out_dir = "out";
    int threads = 1;

    // Canonical text round-trip (also the manifest config echo).
    std::string canonical_text() const;
};

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_no, const std::string& msg)
        : std::runtime_error("config line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

// Sectioned key = value grammar; '#' comments; unknown keys rejected.
// JSON input (object of sections) is accepted with identical semantics when
// the text starts with '{'.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

} // namespace tracelab
