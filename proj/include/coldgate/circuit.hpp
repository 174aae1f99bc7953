#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coldgate/lattice_qc.hpp"

namespace coldgate {

enum class OpCode { init, h, x, z, lx, ly, sweep, measure };

struct CircuitOp {
    OpCode op;
    std::vector<int> sites;      // 0-based
    std::vector<double> values;  // phases, or INIT digits
    int line = 0;
};

/// Line-oriented circuit script:
///   INIT [digits]   reset; digits 0, 1 or r per site (default all 0)
///   H j | X j | Z j single-site pulses (1-based sites); on the r-carrying site they act on {0, r}
///   LX phi | LY phi uniform lattice shift
///   SWEEP phi-list  sweep of the r-carrying site across all other sites in order
///   MEASURE sites   computational-basis measurement ("all" or a list)
/// '#' starts a comment; phases accept multiples of pi.
std::vector<CircuitOp> parse_circuit(const std::string& text, int sites);

struct CircuitRun {
    LatticeRegister reg;
    std::vector<std::vector<int>> measured_sites;
    std::vector<std::vector<int>> outcomes;
};

/// Executes on an lx x ly register; r_site (0-based, or -1) carries the transport level.
CircuitRun run_circuit(const std::vector<CircuitOp>& ops, int lx, int ly, int r_site, std::uint64_t seed);

}  // namespace coldgate
