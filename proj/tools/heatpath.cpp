// Experiment harness: runs one named experiment from a key=value config
// and/or command line flags, writes CSV reports and prints pass/fail lines.

#include <CLI11.hpp>
#include <iostream>

#include "heatpath/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"heatpath experiment harness"};
    std::string config_path, experiment, out_dir;
    std::uint64_t seed = 0;
    bool list = false;
    bool have_seed = false;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--experiment", experiment, "experiment name (overrides config)");
    app.add_option("--out", out_dir, "output directory for CSV reports");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
    app.add_flag("--list", list, "list available experiments");
    CLI11_PARSE(app, argc, argv);
    have_seed = seed_opt->count() > 0;

    if (list) {
        std::cout << heatpath::list_experiments();
        return 0;
    }

    heatpath::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = heatpath::load_config(config_path);
        if (!experiment.empty()) cfg.experiment = experiment;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (have_seed) cfg.seed = seed;
        if (cfg.experiment.empty())
            throw heatpath::ConfigError("no experiment selected (use --experiment or config)");

        heatpath::ExperimentResult res = heatpath::run_experiment(cfg);
        for (const auto& c : res.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << res.name << "/" << c.name
                      << "  value=" << c.value << " bound=" << c.bound
                      << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
        for (const auto& f : res.outputs) std::cout << "wrote " << f << "\n";
        std::cout << (res.pass() ? "OK" : "FAILED") << " " << res.name << "\n";
        return res.pass() ? 0 : 1;
    } catch (const heatpath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n\navailable experiments:\n"
                  << heatpath::list_experiments();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
