#pragma once

#include <string>
#include <vector>

#include "coldgate/numerics.hpp"
#include "coldgate/traps.hpp"

namespace coldgate {

double cm_overlap_analytic(double omega0, double omega, double t);
// Complex amplitude <Phi_0|Phi(t)> whose squared modulus is cm_overlap_analytic.
cplx cm_amplitude_analytic(double omega0, double omega, double t);

double energy_shift_bb(const SwitchingConfig& cfg, double t);

struct PerturbativePhase {
    double saddle_point = 0.0;
    double quadrature = 0.0;
};
PerturbativePhase phase_per_period_perturbative(const SwitchingConfig& cfg);

// Effective 1D contact strength after integrating out the transverse ground state.
double effective_coupling(double a_s, const SwitchingConfig& cfg);

enum class Channel { bb, ab };
enum class ContactModel { grid_point, gaussian };

struct GridOptions {
    int points = 512;           // relative-coordinate grid (b,b)
    double extent = 20.0;       // half-width of the 1D grids
    int points_2d = 256;        // per axis for (a,b)
    double extent_2d = 16.0;
    int steps_per_period = 0;   // 0: chosen from the grid's kinetic cutoff
    ContactModel contact = ContactModel::grid_point;
    double g_scale = 1.0;
    bool check_convergence = false;
    bool mirror = false;        // (a,b): swap which side the a-atom starts on
    bool product_state = true;  // (b,b): also evolve the unsymmetrized relative state
};

struct SwitchTimeSeries {
    std::vector<double> t;
    std::vector<double> phase;         // interaction phase, unwrapped
    std::vector<double> overlap_ni;    // |<psi_ni(t)|psi(t)>|^2
    std::vector<double> overlap_init;  // |<psi(0)|psi(t)>|^2
    std::vector<cplx> amplitude_init;  // <psi(0)|psi(t)>
    std::vector<cplx> amplitude_product;  // (b,b): unsymmetrized <psi(0)|psi(t)>
    std::vector<cplx> amplitude_single;   // (b,b): single b-atom <psi+(0)|psi+(t)>
    std::vector<double> revival_times;
    double delta_T = 0.0;
    double g = 0.0;
    double norm_drift = 0.0;
    double antisymmetric_norm = 0.0;
    bool revives = true;
    std::vector<std::string> warnings;

    // Linear interpolation of a sampled series at time tq.
    double at(const std::vector<double>& series, double tq) const;
    cplx at(const std::vector<cplx>& series, double tq) const;
    std::string to_csv(double period, int stride = 1) const;
};

// Throws ConvergenceError when the resolution check fails and NormLoss on norm drift.
SwitchTimeSeries propagate(const SwitchingConfig& cfg, Channel channel, double tau,
                           const GridOptions& opts = {});

// Noninteracting CM overlap from a grid propagation, at the requested times.
std::vector<double> cm_overlap_grid(const SwitchingConfig& cfg, const std::vector<double>& times,
                                    const GridOptions& opts = {});

// Revival maxima of overlap_init near k T, k = 1.. and the fitted period shift.
void extract_revivals(SwitchTimeSeries& series, double period);

enum class SwitchingVariant { transverse_displacement, collinear };

struct NetPhase {
    double net_phase = 0.0;
    double tau = 0.0;
    double delta_T = 0.0;
    double phi_bb = 0.0;
    double phi_ab = 0.0;
    double phi_ba = 0.0;
    double revival_overlap = 0.0;
    SwitchTimeSeries bb;
};

NetPhase net_phase_gate(const SwitchingConfig& cfg, int n,
                        SwitchingVariant variant = SwitchingVariant::transverse_displacement,
                        const GridOptions& opts = {});

}  // namespace coldgate

namespace coldgate {

struct GridWavefunction {
    std::vector<double> x;
    std::vector<cplx> psi;
    double dx = 0.0;
};

// Split-step propagation of one particle in the unit-frequency trap centred at traj(t),
// starting from the trap ground state at traj.t_begin(). Independent check of the
// coherent-state solution.
GridWavefunction propagate_moving_trap(const Trajectory& traj, int points = 512, double extent = 20.0,
                                       int steps = 20000);

}  // namespace coldgate
