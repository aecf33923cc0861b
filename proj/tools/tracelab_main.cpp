#include <iostream>

#include <CLI11.hpp>

#include "tracelab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tracelab: finite-lattice fermion laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;

    auto* run = app.add_subcommand("run", "execute a scenario from a config file");
    run->add_option("config", config_path, "config file (sectioned text or json)")
        ->required();
    run->add_option("--out", out_dir, "output directory (overrides config)");
    run->add_option("--threads", threads, "worker threads fanned over time points");

    bool full = false;
    auto* check = app.add_subcommand("check", "run the built-in invariant suite");
    check->add_flag("--full", full, "L <= 6 suites (default: fast, L <= 3)");

    auto* list = app.add_subcommand("list-scenarios", "print scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            tracelab::ScenarioConfig cfg = tracelab::load_config(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (threads > 0) cfg.threads = threads;
            tracelab::RunManifest manifest = tracelab::run_scenario(cfg);
            std::cout << "wrote " << cfg.out_dir << "/manifest.json ("
                      << manifest.checksums.size() << " artifacts)\n";
            return 0;
        }
        if (check->parsed()) {
            auto results = tracelab::run_checks(full ? tracelab::CheckLevel::full
                                                     : tracelab::CheckLevel::fast);
            int failures = tracelab::print_checks(std::cout, results);
            return failures == 0 ? 0 : 1;
        }
        if (list->parsed()) {
            for (tracelab::Scenario s : tracelab::all_scenarios())
                std::cout << tracelab::scenario_name(s) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
