#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coldgate/config.hpp"

namespace coldgate {

struct RunOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int jobs = 1;
};

const std::vector<std::string>& scenario_names();

/// Runs a scenario, writing its artifacts and `<scenario>.config` (the resolved config) into
/// out_dir. Returns the process exit status; ValidationError and ConvergenceError propagate.
int run_scenario(const std::string& name, Config& cfg, const RunOptions& opt);

}  // namespace coldgate
