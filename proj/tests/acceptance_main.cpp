// One line per acceptance criterion; exits nonzero if any fails.
#include <cstdio>

#include "coldgate/acceptance.hpp"

int main() {
    coldgate::AcceptanceOptions opt;
    const auto results = coldgate::run_acceptance(opt);
    for (const auto& r : results)
        std::printf("%s %-30s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    return coldgate::all_passed(results) ? 0 : 1;
}
