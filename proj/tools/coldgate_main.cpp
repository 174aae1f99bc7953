// coldgate command-line front end: runs one scenario and maps failures to exit codes.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "coldgate/config.hpp"
#include "coldgate/errors.hpp"
#include "coldgate/scenarios.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coldgate: cold-atom gate simulations and lattice quantum-computing scenarios"};
    std::string scenario, config_path, out = ".";
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string names;
    for (const auto& n : coldgate::scenario_names()) names += (names.empty() ? "" : ", ") + n;
    app.add_option("scenario", scenario, "one of: " + names)->required();
    app.add_option("--config", config_path, "key=value or JSON config file");
    app.add_option("--out", out, "output directory (COLDGATE_OUT overrides)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides a seed key in the config)");
    app.add_option("--jobs", jobs, "parallel workers for independent parameter points");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("COLDGATE_OUT"); env && *env) out = env;
    try {
        coldgate::Config cfg = config_path.empty() ? coldgate::Config{} : coldgate::Config::load(config_path);
        if (seed_opt->count() > 0) cfg.set("seed", std::to_string(seed));
        return coldgate::run_scenario(scenario, cfg, {out, seed, jobs});
    } catch (const coldgate::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const coldgate::ConvergenceError& e) {
        std::cerr << "not converged: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
