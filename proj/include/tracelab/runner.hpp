#pragma once

#include <iosfwd>
#include <map>

#include "tracelab/config.hpp"

namespace tracelab {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct RunManifest {
    std::string config_echo;
    std::string artifact_version = kArtifactVersion;
    double wall_time_seconds = 0.0;
    double t_max_prerecurrence = 0.0;
    std::map<std::string, std::string> checksums; // file name -> fnv1a hex

    std::string to_json() const;
};

// Executes the configured scenario, writes curve CSVs plus manifest.json into
// cfg.out_dir, returns the manifest.
RunManifest run_scenario(const ScenarioConfig& cfg);

enum class CheckLevel { fast, full };

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed() const { return residual < tolerance; }
};

// Built-in invariant suite over all modules (fast: L <= 3, full: L <= 6).
// `corrupt_jw` is a test hook that breaks the Jordan-Wigner sign string and
// must make the CAR checks fail.
std::vector<CheckResult> run_checks(CheckLevel level, bool corrupt_jw = false);

int print_checks(std::ostream& out, const std::vector<CheckResult>& results);

} // namespace tracelab
