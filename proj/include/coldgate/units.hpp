#pragma once

#include <cmath>

namespace coldgate {

constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
constexpr double kRb87Mass = 86.909180527 * kAtomicMassUnit;

// Harmonic-oscillator units: m = hbar = omega = 1. Only the SI scale factors are stored.
struct OscUnits {
    double mass_kg = kRb87Mass;
    double omega_rad_s = 1.0;

    double length_m() const { return std::sqrt(kHbar / (mass_kg * omega_rad_s)); }
    double energy_J() const { return kHbar * omega_rad_s; }
    double time_s() const { return 1.0 / omega_rad_s; }
    double velocity_m_s() const { return length_m() * omega_rad_s; }

    double length_from_si(double meters) const { return meters / length_m(); }
    double length_to_si(double osc) const { return osc * length_m(); }
    double frequency_from_si(double rad_s) const { return rad_s / omega_rad_s; }
    double time_to_si(double osc) const { return osc * time_s(); }

    static OscUnits from_frequency_hz(double hz, double mass_kg = kRb87Mass) {
        return OscUnits{mass_kg, 2.0 * 3.14159265358979323846 * hz};
    }
};

}  // namespace coldgate
