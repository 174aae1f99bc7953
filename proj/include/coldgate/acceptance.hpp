#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coldgate/numerics.hpp"

namespace coldgate {

struct CriterionResult {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    double lx_phase = kPi;  // collision phase used by the Shor sequences
    double g_scale = 1.0;   // multiplies the switching-gate contact strength
    bool self_tests = true; // also run the fault-injection checks
    std::uint64_t seed = 1;
    std::vector<std::string> only;  // criterion ids to run; empty means all
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// Individual criteria, usable with tampered options.
CriterionResult accept_switching_phase(const AcceptanceOptions& opt);
CriterionResult accept_syndrome_table(const AcceptanceOptions& opt);

std::string acceptance_json(const std::vector<CriterionResult>& results);
std::string acceptance_summary(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace coldgate
