#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "coldgate/moving_gate.hpp"
#include "coldgate/numerics.hpp"
#include "coldgate/switching_gate.hpp"

namespace coldgate {

struct ThermalMotionalState {
    double omega = 1.0;
    double kT = 0.0;
    int n_max = 0;
    std::vector<double> p;
    double tail = 0.0;  // Boltzmann weight above n_max
};

// Boltzmann occupations p_n = (1 - x) x^n, x = exp(-omega/kT); n_max is raised until the tail
// mass drops below 1e-13.
ThermalMotionalState thermal_state(double omega, double kT, int n_max = 0);

using InternalState = std::array<cplx, 4>;  // amplitudes of |aa>, |ab>, |ba>, |bb>
using ChannelAmplitudes = std::array<cplx, 4>;

// Diagonal gate: per internal basis pair, the motional-diagonal amplitude <n1 n2|U_i|n1 n2>.
struct GateChannel {
    std::array<cplx, 4> ideal{1.0, 1.0, 1.0, 1.0};
    std::function<ChannelAmplitudes(int, int)> amplitude;
    std::function<ChannelAmplitudes(int, int)> symmetrized_amplitude;
    std::string name = "channel";
};

GateChannel ideal_channel(const std::array<cplx, 4>& phases);

double fidelity_at(const GateChannel& channel, const ThermalMotionalState& rho, bool symmetrized,
                   const InternalState& state);

struct FidelityResult {
    double fidelity = 1.0;
    InternalState worst_state{};
    double spread = 0.0;
    int starts = 0;
};

// Minimum over internal two-atom states. Throws OptimizationNotConverged if the
// best multi-start values spread by more than 1e-6.
FidelityResult min_fidelity(const GateChannel& channel, const ThermalMotionalState& rho, bool symmetrized);

struct TimingCurve {
    std::vector<double> offsets;
    std::vector<double> fidelity;
    double half_width = 0.0;  // offset where F has dropped by 0.01; NaN if never reached
};

TimingCurve timing_sensitivity(const std::function<GateChannel(double)>& factory, double tau0, double delta,
                               int half_count, const ThermalMotionalState& rho, bool symmetrized);

// Switching gate at hold time tau with one-particle phase corrections calibrated at tau_cal.
// Only the motional ground state is modeled; excited levels contribute zero amplitude.
GateChannel switching_channel(const SwitchingConfig& cfg, const SwitchTimeSeries& bb, double tau, double tau_cal);

// Moving gate with thermal motion along the transport axis.
struct MovingGateModel {
    MovingGateSetup setup;
    ScatteringLengths scattering;
    GaussianGeometry geometry;
};

GateChannel moving_channel(const MovingGateModel& model);

// Collisional phase for motional levels (n1, n2) of the two colliding particles.
double level_collision_phase(const Trajectory& first, const Trajectory& second, int n1, int n2, double a_s,
                             const GaussianGeometry& geometry);

}  // namespace coldgate

namespace coldgate {

struct SwitchingFidelityReport {
    double tau0 = 0.0;            // hold time maximizing the symmetrized fidelity
    double fidelity = 0.0;        // symmetrized, at tau0
    double fidelity_unsymmetrized = 0.0;
    TimingCurve timing;
};

// Scans tau around n periods (the series must extend to about (n + 0.05) T), picks the best
// hold time and samples the timing curve there with step `delta` (in units of T).
SwitchingFidelityReport switching_fidelity(const SwitchingConfig& cfg, const SwitchTimeSeries& bb, int n,
                                           double delta = 2e-4, int half_count = 20);

}  // namespace coldgate
