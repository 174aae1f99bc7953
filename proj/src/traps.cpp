#include "coldgate/traps.hpp"

#include <cmath>
#include <memory>

#include "coldgate/errors.hpp"
#include "coldgate/units.hpp"

namespace coldgate {

void LatticeBeamConfig::validate() const {
    if (!(k > 0)) throw ValidationError("lattice: k must be positive");
    if (!(depth >= 0)) throw ValidationError("lattice: depth must be non-negative");
    if (!(tau_r > 0)) throw ValidationError("lattice: tau_r must be positive");
}

LatticePotentials lattice_potentials(const LatticeBeamConfig& cfg, double z, double theta) {
    const double sp = std::sin(cfg.k * z + theta);
    const double sm = std::sin(cfg.k * z - theta);
    const double vp = cfg.depth * sp * sp;
    const double vm = cfg.depth * sm * sm;
    return {(vp + 3.0 * vm) / 4.0, vp};
}

double theta_profile(double t, double tau_r, double tau_i) {
    const double r = tau_i / tau_r;
    const double num = 1.0 + std::exp(-r * r);
    const double arg = (t * t - tau_i * tau_i) / (tau_r * tau_r);
    // exp overflows long before the ratio stops being zero
    if (arg > 700.0) return kPi / 2.0;
    return kPi * (1.0 - num / (1.0 + std::exp(arg))) / 2.0;
}

HarmonicWell harmonic_approx(const std::function<double(double)>& potential, double guess,
                             double halfwidth, double mass) {
    if (!(halfwidth > 0)) throw ValidationError("harmonic_approx: halfwidth must be positive");
    const double lo = guess - halfwidth, hi = guess + halfwidth;
    double c = num::golden_section_min(potential, lo, hi, 1e-10 * halfwidth);
    const double h = 1e-4 * halfwidth;
    // Newton polish: golden section alone stalls near sqrt(eps) of the bracket.
    for (int i = 0; i < 3; ++i) {
        const double d2 = num::second_derivative(potential, c, h);
        if (!(d2 > 0)) break;
        const double step = num::first_derivative(potential, c, h) / d2;
        if (std::abs(step) > 0.1 * halfwidth) break;
        c -= step;
    }
    const double curv = num::second_derivative(potential, c, h);
    if (!(curv > 0) || c - lo < 1e-6 * halfwidth || hi - c < 1e-6 * halfwidth)
        throw NoMinimum("harmonic_approx: no local minimum near z = " + num::format_double(guess));
    return {c, std::sqrt(curv / mass), curv, true};
}

HarmonicWell lattice_well(const LatticeBeamConfig& cfg, Level level, double theta, double guess) {
    cfg.validate();
    auto v = [&](double z) {
        const auto p = lattice_potentials(cfg, z, theta);
        return level == Level::a ? p.va : p.vb;
    };
    HarmonicWell w = harmonic_approx(v, guess, kPi / (4.0 * cfg.k));
    w.valid = cfg.depth > kHarmonicDepthThreshold;
    return w;
}

// ---- Trajectory ----

Trajectory::Trajectory(double t_begin, double t_end, std::vector<Fn> derivatives, Fn frequency,
                       std::string name)
    : t0_(t_begin), t1_(t_end), derivs_(std::move(derivatives)), freq_(std::move(frequency)),
      name_(std::move(name)) {
    if (!(t_end > t_begin)) throw ValidationError("trajectory: empty time window");
    if (derivs_.empty()) throw ValidationError("trajectory: position function required");
}

double Trajectory::derivative(double t, int order) const {
    if (order < 0) throw ValidationError("trajectory: negative derivative order");
    if (order <= max_derivative()) return derivs_[order](t);
    // Finite differences of the highest analytic derivative, one order at most.
    if (order == max_derivative() + 1) {
        const double h = 1e-4 * (t1_ - t0_);
        return num::first_derivative(derivs_.back(), t, h);
    }
    throw ValidationError("trajectory '" + name_ + "': derivative of order " + std::to_string(order) +
                          " not available");
}

bool Trajectory::is_round_trip(double tol) const {
    return std::abs(position(t0_) - position(t1_)) <= tol;
}

Trajectory Trajectory::shifted(double dt) const {
    std::vector<Fn> d;
    for (const auto& f : derivs_) d.push_back([f, dt](double t) { return f(t - dt); });
    Fn fr;
    if (freq_) fr = [f = freq_, dt](double t) { return f(t - dt); };
    return Trajectory(t0_ + dt, t1_ + dt, std::move(d), std::move(fr), name_);
}

Trajectory Trajectory::offset(double dx) const {
    std::vector<Fn> d = derivs_;
    d[0] = [f = derivs_[0], dx](double t) { return f(t) + dx; };
    return Trajectory(t0_, t1_, std::move(d), freq_, name_);
}

Trajectory Trajectory::stationary(double center, double tau) {
    std::vector<Fn> d{[center](double) { return center; }};
    for (int i = 0; i < 8; ++i) d.push_back([](double) { return 0.0; });
    return Trajectory(-tau, tau, std::move(d), {}, "stationary");
}

Trajectory Trajectory::linear(double velocity, double tau) {
    std::vector<Fn> d{[velocity, tau](double t) { return velocity * (t + tau); },
                      [velocity](double) { return velocity; }};
    for (int i = 0; i < 7; ++i) d.push_back([](double) { return 0.0; });
    return Trajectory(-tau, tau, std::move(d), {}, "linear");
}

Trajectory Trajectory::sin2_round_trip(double distance, double tau) {
    // distance * sin^2(pi (t + tau) / (2 tau)) = distance/2 (1 - cos(Omega s)), s = t + tau.
    const double om = kPi / tau;
    std::vector<Fn> d{[=](double t) { return 0.5 * distance * (1.0 - std::cos(om * (t + tau))); }};
    for (int n = 1; n <= 8; ++n) {
        d.push_back([=](double t) {
            return -0.5 * distance * std::pow(om, n) * std::cos(om * (t + tau) + n * kPi / 2.0);
        });
    }
    return Trajectory(-tau, tau, std::move(d), {}, "sin2");
}

Trajectory Trajectory::quartic_bump(double amplitude, double tau) {
    const double A = amplitude;
    std::vector<Fn> d{
        [=](double t) { const double u = t / tau; return A * (1 - u * u) * (1 - u * u); },
        [=](double t) { const double u = t / tau; return A * (-4 * u + 4 * u * u * u) / tau; },
        [=](double t) { const double u = t / tau; return A * (-4 + 12 * u * u) / (tau * tau); },
        [=](double t) { const double u = t / tau; return A * 24 * u / (tau * tau * tau); },
        [=](double) { return A * 24 / (tau * tau * tau * tau); },
    };
    for (int i = 0; i < 4; ++i) d.push_back([](double) { return 0.0; });
    return Trajectory(-tau, tau, std::move(d), {}, "quartic");
}

Trajectory Trajectory::gaussian_bump(double amplitude, double sigma, double tau) {
    // d^n/dt^n exp(-u^2) with u = t / (sigma sqrt 2) is (-1)^n c^n H_n(u) exp(-u^2), c = 1/(sigma sqrt 2).
    const double c = 1.0 / (sigma * std::sqrt(2.0));
    std::vector<Fn> d;
    for (int n = 0; n <= 8; ++n) {
        d.push_back([=](double t) {
            const double u = c * t;
            double h0 = 1.0, h1 = 2.0 * u;
            double hn = n == 0 ? h0 : h1;
            for (int k = 1; k < n; ++k) {
                hn = 2.0 * u * h1 - 2.0 * k * h0;
                h0 = h1;
                h1 = hn;
            }
            const double sign = (n % 2) ? -1.0 : 1.0;
            return amplitude * sign * std::pow(c, n) * hn * std::exp(-u * u);
        });
    }
    return Trajectory(-tau, tau, std::move(d), {}, "gaussian");
}

Trajectory Trajectory::sampled(const std::vector<double>& times, const std::vector<double>& positions,
                               const std::vector<double>& frequencies) {
    auto sp = std::make_shared<num::CubicSpline>(times, positions);
    std::vector<Fn> d;
    for (int n = 0; n <= 3; ++n) d.push_back([sp, n](double t) { return sp->derivative(t, n); });
    Fn fr;
    if (!frequencies.empty()) {
        auto fs = std::make_shared<num::CubicSpline>(times, frequencies);
        fr = [fs](double t) { return (*fs)(t); };
    }
    return Trajectory(times.front(), times.back(), std::move(d), std::move(fr), "sampled");
}

// ---- switching geometry ----

double SwitchingConfig::omega_perp() const { return std::sqrt(omega_y * omega_z); }

std::vector<std::string> SwitchingConfig::validate() const {
    if (!(omega0 > 0 && omega > 0 && omega_y > 0 && omega_z > 0))
        throw ValidationError("switching: frequencies must be positive");
    if (!(x0 > 0)) throw ValidationError("switching: x0 must be positive");
    if (!(a_bb >= 0 && a_ab >= 0)) throw ValidationError("switching: scattering lengths must be non-negative");
    if (!(tau >= 0)) throw ValidationError("switching: tau must be non-negative");
    std::vector<std::string> warnings;
    if (!(omega0 > omega)) warnings.push_back("switching: expected omega0 > omega");
    if (!(std::min(omega_y, omega_z) > 3.0 * omega0))
        warnings.push_back("switching: transverse confinement not much stronger than omega0");
    return warnings;
}

SwitchingConfig SwitchingConfig::rb87_benchmark() {
    const OscUnits u = OscUnits::from_frequency_hz(23.4e3);
    SwitchingConfig c;
    c.omega = 1.0;
    c.omega0 = 2.0;
    c.omega_y = c.omega_z = 150.0 / 23.4;
    c.x0 = 3.0 * std::sqrt(2.0);
    c.a_bb = c.a_ab = u.length_from_si(5.1e-9);
    c.tau = 7.0 * c.period();
    return c;
}

double switching_potential(const SwitchingConfig& cfg, Level level, double t, double x) {
    const bool merged = level == Level::b && t >= 0.0 && t <= cfg.tau;
    if (merged) return 0.5 * cfg.omega * cfg.omega * x * x;
    const double d = std::abs(x) - cfg.x0;
    return 0.5 * cfg.omega0 * cfg.omega0 * d * d;
}

}  // namespace coldgate
