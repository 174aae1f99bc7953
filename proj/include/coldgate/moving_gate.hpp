#pragma once

#include <array>
#include <string>
#include <vector>

#include "coldgate/numerics.hpp"
#include "coldgate/traps.hpp"

namespace coldgate {

// Exact state of a particle in a moving harmonic trap (omega = 1), started in |0> at t0:
// |Psi> = e^{i beta} sum_n (i K e^{-i(t - t0)})^n / sqrt(n!) |n>.
struct CoherentEvolution {
    cplx K{0.0, 0.0};
    cplx beta{0.0, 0.0};
    double t0 = 0.0;
    double t = 0.0;

    // Coherent amplitude alpha = i K e^{-i(t - t0)}.
    cplx alpha() const;
    // <n|Psi>.
    cplx amplitude(int n) const;
    // Position-space wavefunction.
    cplx wavefunction(double x) const;
    double excited_population() const;
};

CoherentEvolution evolve_coherent(const Trajectory& traj, double t, double abs_tol = 1e-10);

// Exact: arg <0|D(xbar)^dagger|Psi(t_end)>. Approximate: (1/2) int xbar'^2 dt.
double kinetic_phase(const Trajectory& traj, bool exact);

struct AdiabaticityReport {
    double residual = 0.0;            // |int xbar' e^{it} dt|
    double excited_population = 0.0;  // 1 - e^{-|K(end)|^2}
};
AdiabaticityReport adiabaticity_residual(const Trajectory& traj);

struct ScatteringLengths {
    double aa = 0.0;
    double ab = 0.0;
    double bb = 0.0;
};

// Transverse ground-state widths; the along-axis width follows 1/sqrt(omega(t)).
struct GaussianGeometry {
    double width_y = 1.0;
    double width_z = 1.0;
};

// Interaction energy of two Gaussian ground-state densities (distinct internal states).
double overlap_energy_distinct(double a_s, double c1, double w1, double c2, double w2,
                               const GaussianGeometry& g);
// Same internal state with Bose symmetrization: coefficient 8 pi / (1 + |alpha|^2).
double overlap_energy_same(double a_s, double c1, double w1, double c2, double w2,
                           const GaussianGeometry& g);
// Single-particle overlap <psi_1|psi_2> of the two Gaussians (3D, transverse identical).
double gaussian_overlap(double c1, double w1, double c2, double w2);

struct CollisionResult {
    double phase = 0.0;
    double max_shift = 0.0;
    std::vector<std::string> warnings;
};

// Time integral of the perturbative energy shift between two trajectories.
// Throws PerturbationInvalid if max |dE| >= 0.5.
CollisionResult collisional_phase(const Trajectory& first, const Trajectory& second, double a_s,
                                  bool same_state, const GaussianGeometry& geometry,
                                  double abs_tol = 1e-10);

struct GatePhases {
    double phi_a = 0.0;
    double phi_b = 0.0;
    double phi_ab = 0.0;
    double phi_ba = 0.0;
    double phi_aa = 0.0;
    double phi_bb = 0.0;
    std::vector<std::string> warnings;
};

// Particle 1 starts to the right of particle 2; traj_*[0] is particle 1.
struct MovingGateSetup {
    Trajectory p1_a, p1_b, p2_a, p2_b;
};

GatePhases collisional_phase_perturbative(const MovingGateSetup& setup, const ScatteringLengths& s,
                                          const GaussianGeometry& geometry, bool exact_kinetic = true);

struct PhaseTable {
    std::array<cplx, 4> full;     // |aa>, |ab>, |ba>, |bb>
    std::array<cplx, 4> reduced;  // one-particle phases absorbed
};
PhaseTable gate_map(const GatePhases& phases);

struct CorrectionExpansion {
    std::vector<cplx> boundary;  // per order n = 0..N
    cplx remainder{0.0, 0.0};
    cplx truncated{0.0, 0.0};    // sum of boundary terms
    cplx fourth_order{0.0, 0.0};         // closed fourth-order form at the end point
    bool hierarchy_violated = false;
};

// Derivative expansion of K(t_end) to order N; the identity sum(boundary) + remainder = K holds.
CorrectionExpansion correction_terms(const Trajectory& traj, int order);

}  // namespace coldgate

namespace coldgate {

// Harmonic fits of the a- and b-wells along the theta(t) sweep on [-tau, tau].
struct LatticeSweep {
    std::vector<double> t, dx_a, dx_b, omega_a, omega_b;
    double spacing = 0.0;  // d = pi / k
    bool valid = true;
};

LatticeSweep lattice_sweep(const LatticeBeamConfig& cfg, double tau, int samples = 2001);

// Particle 1 starts one site to the right of particle 2.
MovingGateSetup lattice_setup(const LatticeSweep& sweep);

// Lattice-gate benchmark: Rb87, omega = 2pi 100 kHz, d = 390 nm, omega_b = omega.
LatticeBeamConfig lattice_benchmark();
double lattice_benchmark_scattering_length();

}  // namespace coldgate
