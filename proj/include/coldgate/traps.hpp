#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coldgate/numerics.hpp"

namespace coldgate {

enum class Level { a, b };

// Polarization-gradient lattice: V_{+-}(z, theta) = depth * sin^2(k z +- theta).
struct LatticeBeamConfig {
    double k = 1.0;
    double depth = 10.0;
    double tau_r = 25.0;
    double tau_i = 25.0;

    void validate() const;
};

struct LatticePotentials {
    double va = 0.0;
    double vb = 0.0;
};

LatticePotentials lattice_potentials(const LatticeBeamConfig& cfg, double z, double theta);

double theta_profile(double t, double tau_r, double tau_i);

struct HarmonicWell {
    double center = 0.0;
    double frequency = 0.0;
    double curvature = 0.0;
    bool valid = true;  // lattice wells: depth above the harmonic-validity threshold
};

// Locates the minimum of V within [guess - halfwidth, guess + halfwidth] and fits the
// local curvature. Throws NoMinimum for a non-positive curvature.
HarmonicWell harmonic_approx(const std::function<double(double)>& potential, double guess,
                             double halfwidth = 1.0, double mass = 1.0);

constexpr double kHarmonicDepthThreshold = 10.0;

// Harmonic fit of the a- or b-well nearest to the guess at angle theta.
HarmonicWell lattice_well(const LatticeBeamConfig& cfg, Level level, double theta, double guess);

// Trap-center path xbar(t) on [t_begin, t_end] with optional analytic derivatives and an
// optional time-dependent trap frequency (default 1).
class Trajectory {
public:
    using Fn = std::function<double(double)>;

    Trajectory(double t_begin, double t_end, std::vector<Fn> derivatives, Fn frequency = {},
               std::string name = "custom");

    static Trajectory stationary(double center, double tau);
    static Trajectory linear(double velocity, double tau);
    static Trajectory sin2_round_trip(double distance, double tau);
    static Trajectory quartic_bump(double amplitude, double tau);
    static Trajectory gaussian_bump(double amplitude, double sigma, double tau);
    static Trajectory sampled(const std::vector<double>& times, const std::vector<double>& positions,
                              const std::vector<double>& frequencies = {});

    double position(double t) const { return derivs_[0](t); }
    double derivative(double t, int order) const;
    double frequency(double t) const { return freq_ ? freq_(t) : 1.0; }
    bool has_frequency_profile() const { return static_cast<bool>(freq_); }
    int max_derivative() const { return static_cast<int>(derivs_.size()) - 1; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    const std::string& name() const { return name_; }
    bool is_round_trip(double tol = 1e-9) const;

    // Same path delayed by dt.
    Trajectory shifted(double dt) const;
    // Same path offset by dx.
    Trajectory offset(double dx) const;

private:
    double t0_, t1_;
    std::vector<Fn> derivs_;
    Fn freq_;
    std::string name_;
};

// Sudden-switching geometry, in oscillator units of the merged well (omega = 1).
struct SwitchingConfig {
    double omega0 = 2.0;
    double omega = 1.0;
    double omega_y = 1.0;
    double omega_z = 1.0;
    double x0 = 1.0;
    double a_bb = 0.0;
    double a_ab = 0.0;
    double tau = 0.0;

    double period() const { return 2.0 * kPi / omega; }
    double omega_perp() const;
    // Throws ValidationError for invalid values; returns warnings for a weak hierarchy.
    std::vector<std::string> validate() const;

    // Rb87, omega = 2pi 23.4 kHz, omega_perp = 2pi 150 kHz, omega0 = 2 omega,
    // x0 = 3 sqrt(2) a_x, a_s = 5.1 nm; tau = 7 T.
    static SwitchingConfig rb87_benchmark();
};

double switching_potential(const SwitchingConfig& cfg, Level level, double t, double x);

}  // namespace coldgate
