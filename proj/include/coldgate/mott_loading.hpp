#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coldgate {

enum class Boundary { open, periodic };

/// Returns amplitude * (sin^2(pi x / period) + sin^2(pi y / period)).
double superlattice(double x, double y, double amplitude, double period);

struct BoseHubbardLattice {
    int lx = 18, ly = 18;
    double spacing = 1.0;
    double J = 1.0, U = 30.0, mu = 15.0;
    std::vector<double> offsets;  // row-major, size lx*ly; empty means all zero
    Boundary boundary = Boundary::periodic;

    int sites() const { return lx * ly; }
    double offset(int i) const { return offsets.empty() ? 0.0 : offsets[i]; }
    void validate() const;
    std::vector<int> neighbors(int i) const;

    /// Lattice with superlattice offsets sampled at site positions (x, y) = (ix, iy) * spacing.
    static BoseHubbardLattice with_superlattice(int lx, int ly, double J, double U, double mu, double amplitude,
                                                double period, Boundary bc = Boundary::periodic);
};

struct GutzwillerState {
    int lx = 0, ly = 0, n_max = 0;
    std::vector<std::vector<double>> f;  // per site amplitudes f_n, n = 0..n_max
    double energy = 0.0;
    std::vector<double> energy_history;  // total energy after each sweep
    int sweeps = 0;
    bool converged = false;

    double density(int i) const;
    double order_parameter(int i) const;
    double variance(int i) const;
    double total_particles() const;
    double max_norm_error() const;
};

struct MottLabel {
    bool mott;
    int n;  // meaningful only when mott
    std::string str() const { return mott ? "MI(" + std::to_string(n) + ")" : "SF"; }
};

struct GutzwillerOptions {
    int max_sweeps = 20000;
    int restarts = 3;
    double energy_tol = 1e-10;  // relative to J (absolute when J = 0)
    double amplitude_tol = 1e-8;
};

double gutzwiller_energy(const BoseHubbardLattice& lat, const std::vector<std::vector<double>>& f);

GutzwillerState gutzwiller_minimize(const BoseHubbardLattice& lat, int n_max = 6, std::uint64_t seed = 1,
                                    const GutzwillerOptions& opt = {});

std::vector<MottLabel> phase_classify(const GutzwillerState& s, double tol = 1e-3);

/// Energy scales the finite-temperature conditions are compared against.
struct LoadingDiagnostics {
    double min_charge_gap;      // smallest particle/hole excitation energy over Mott sites
    double min_offset_step;     // smallest nonzero |eps_i - eps_j| over neighbor pairs with different filling
    double max_variance;
    double max_order_parameter;
};

LoadingDiagnostics loading_diagnostics(const BoseHubbardLattice& lat, const GutzwillerState& s);

/// CSV with header x,y,density,order_parameter,variance,label.
std::string gutzwiller_csv(const GutzwillerState& s, const std::vector<MottLabel>& labels);

}  // namespace coldgate
