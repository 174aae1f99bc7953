#include "coldgate/moving_gate.hpp"

#include <algorithm>
#include <cmath>

#include "coldgate/errors.hpp"
#include "coldgate/units.hpp"

namespace coldgate {

namespace {

const cplx I(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct KBeta {
    cplx K, beta;
};

// K and beta on a fixed panel partition using nested Gauss-Legendre rules.
KBeta k_beta_panels(const Trajectory& traj, double t0, double t, int panels) {
    const auto& g = num::gauss_legendre(12);
    auto xk = [&](double s) { return traj.position(s) * std::exp(I * (s - t0)) * kInvSqrt2; };
    cplx K = 0.0, beta = 0.0;
    const double h = (t - t0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = t0 + p * h, b = a + h;
        cplx dbeta = 0.0;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double s = 0.5 * (a + b) + 0.5 * h * g.x[j];
            // K(s) = K(a) + int_a^s
            cplx inner = 0.0;
            const double hs = s - a;
            for (std::size_t l = 0; l < g.x.size(); ++l) {
                const double u = a + 0.5 * hs * (1.0 + g.x[l]);
                inner += 0.5 * hs * g.w[l] * xk(u);
            }
            const cplx Ks = K + inner;
            const double x = traj.position(s);
            const cplx dKconj = x * std::exp(-I * (s - t0)) * kInvSqrt2;
            dbeta += 0.5 * h * g.w[j] * (I * Ks * dKconj - 0.5 * x * x);
        }
        cplx dK = 0.0;
        for (std::size_t j = 0; j < g.x.size(); ++j)
            dK += 0.5 * h * g.w[j] * xk(0.5 * (a + b) + 0.5 * h * g.x[j]);
        K += dK;
        beta += dbeta;
    }
    return {K, beta};
}

}  // namespace

cplx CoherentEvolution::alpha() const { return I * K * std::exp(-I * (t - t0)); }

cplx CoherentEvolution::amplitude(int n) const {
    const cplx a = alpha();
    cplx term = std::exp(I * beta);
    for (int k = 1; k <= n; ++k) term *= a / std::sqrt(double(k));
    return term;
}

cplx CoherentEvolution::wavefunction(double x) const {
    const cplx a = alpha();
    return std::exp(I * beta) * std::pow(kPi, -0.25) *
           std::exp(-0.5 * x * x + std::sqrt(2.0) * a * x - 0.5 * a * a);
}

double CoherentEvolution::excited_population() const { return 1.0 - std::exp(-std::norm(K)); }

CoherentEvolution evolve_coherent(const Trajectory& traj, double t, double abs_tol) {
    const double t0 = traj.t_begin();
    if (t < t0 || t > traj.t_end() + 1e-12)
        throw ValidationError("evolve_coherent: time outside the trajectory window");
    CoherentEvolution ev;
    ev.t0 = t0;
    ev.t = t;
    if (t == t0) return ev;
    int panels = std::max(4, static_cast<int>(std::ceil((t - t0) / 0.5)));
    KBeta prev = k_beta_panels(traj, t0, t, panels);
    for (int iter = 0; iter < 10; ++iter) {
        panels *= 2;
        KBeta next = k_beta_panels(traj, t0, t, panels);
        const double err = std::max(std::abs(next.K - prev.K), std::abs(next.beta - prev.beta));
        prev = next;
        if (err < abs_tol) {
            ev.K = prev.K;
            ev.beta = prev.beta;
            return ev;
        }
    }
    throw QuadratureFailure("evolve_coherent: tolerance not met for trajectory '" + traj.name() + "'");
}

double kinetic_phase(const Trajectory& traj, bool exact) {
    if (!exact) {
        return 0.5 * num::integrate(
                         [&](double s) {
                             const double v = traj.derivative(s, 1);
                             return v * v;
                         },
                         traj.t_begin(), traj.t_end());
    }
    const CoherentEvolution ev = evolve_coherent(traj, traj.t_end());
    const double gamma = traj.position(traj.t_end()) / std::sqrt(2.0);
    // arg of e^{i beta} exp(-gamma^2/2 + gamma alpha), kept unwrapped. The state gains
    // e^{+i S} with S the adiabatic action, so this sign lines up with (1/2) int xbar'^2.
    return ev.beta.real() + gamma * ev.alpha().imag();
}

AdiabaticityReport adiabaticity_residual(const Trajectory& traj) {
    const double t0 = traj.t_begin();
    const cplx r = num::integrate_complex(
        [&](double s) { return traj.derivative(s, 1) * std::exp(I * (s - t0)); }, t0, traj.t_end());
    AdiabaticityReport rep;
    rep.residual = std::abs(r);
    rep.excited_population = evolve_coherent(traj, traj.t_end()).excited_population();
    return rep;
}

double gaussian_overlap(double c1, double w1, double c2, double w2) {
    const double s = w1 * w1 + w2 * w2;
    const double d = c1 - c2;
    return std::sqrt(2.0 * w1 * w2 / s) * std::exp(-d * d / (2.0 * s));
}

namespace {

double density_product(double c1, double w1, double c2, double w2, const GaussianGeometry& g) {
    const double s = w1 * w1 + w2 * w2;
    const double d = c1 - c2;
    const double along = std::exp(-d * d / s) / std::sqrt(kPi * s);
    const double transverse = 1.0 / (2.0 * kPi * g.width_y * g.width_z);
    return along * transverse;
}

}  // namespace

double overlap_energy_distinct(double a_s, double c1, double w1, double c2, double w2,
                               const GaussianGeometry& g) {
    return 4.0 * kPi * a_s * density_product(c1, w1, c2, w2, g);
}

double overlap_energy_same(double a_s, double c1, double w1, double c2, double w2,
                           const GaussianGeometry& g) {
    const double al = gaussian_overlap(c1, w1, c2, w2);
    return 8.0 * kPi * a_s / (1.0 + al * al) * density_product(c1, w1, c2, w2, g);
}

CollisionResult collisional_phase(const Trajectory& first, const Trajectory& second, double a_s,
                                  bool same_state, const GaussianGeometry& geometry, double abs_tol) {
    const double t0 = std::max(first.t_begin(), second.t_begin());
    const double t1 = std::min(first.t_end(), second.t_end());
    CollisionResult res;
    if (!(t1 > t0) || a_s == 0.0) return res;
    auto shift = [&](double t) {
        const double w1 = 1.0 / std::sqrt(first.frequency(t));
        const double w2 = 1.0 / std::sqrt(second.frequency(t));
        const double c1 = first.position(t), c2 = second.position(t);
        return same_state ? overlap_energy_same(a_s, c1, w1, c2, w2, geometry)
                          : overlap_energy_distinct(a_s, c1, w1, c2, w2, geometry);
    };
    const int samples = 4000;
    for (int i = 0; i <= samples; ++i)
        res.max_shift = std::max(res.max_shift, std::abs(shift(t0 + (t1 - t0) * i / samples)));
    if (res.max_shift >= 0.5)
        throw PerturbationInvalid("collisional_phase: max |dE| = " + num::format_double(res.max_shift) +
                                  " exceeds 0.5 hbar omega");
    if (res.max_shift >= 0.1)
        res.warnings.push_back("collisional_phase: max |dE| = " + num::format_double(res.max_shift) +
                               " is not small compared to hbar omega");
    res.phase = num::integrate(shift, t0, t1, abs_tol);
    return res;
}

GatePhases collisional_phase_perturbative(const MovingGateSetup& setup, const ScatteringLengths& s,
                                          const GaussianGeometry& geometry, bool exact_kinetic) {
    GatePhases ph;
    // Kinetic phases refer to the particle's own starting well.
    auto relative = [](const Trajectory& x) { return x.offset(-x.position(x.t_begin())); };
    ph.phi_a = kinetic_phase(relative(setup.p1_a), exact_kinetic);
    ph.phi_b = kinetic_phase(relative(setup.p1_b), exact_kinetic);
    auto run = [&](const Trajectory& x, const Trajectory& y, double a, bool same) {
        CollisionResult r = collisional_phase(x, y, a, same, geometry);
        ph.warnings.insert(ph.warnings.end(), r.warnings.begin(), r.warnings.end());
        return r.phase;
    };
    ph.phi_ab = run(setup.p1_a, setup.p2_b, s.ab, false);
    ph.phi_ba = run(setup.p1_b, setup.p2_a, s.ab, false);
    ph.phi_aa = run(setup.p1_a, setup.p2_a, s.aa, true);
    ph.phi_bb = run(setup.p1_b, setup.p2_b, s.bb, true);
    return ph;
}

PhaseTable gate_map(const GatePhases& p) {
    auto e = [](double phi) { return std::exp(-I * phi); };
    PhaseTable t;
    t.full = {e(2 * p.phi_a + p.phi_aa), e(p.phi_a + p.phi_b + p.phi_ab), e(p.phi_a + p.phi_b + p.phi_ba),
              e(2 * p.phi_b + p.phi_bb)};
    t.reduced = {e(p.phi_aa), e(p.phi_ab), e(p.phi_ba), e(p.phi_bb)};
    return t;
}

CorrectionExpansion correction_terms(const Trajectory& traj, int order) {
    if (order < 0) throw ValidationError("correction_terms: negative order");
    const double t0 = traj.t_begin(), t = traj.t_end();
    const cplx e_end = std::exp(I * (t - t0));
    CorrectionExpansion ex;
    cplx ipow = I;  // i^{n+1}
    for (int n = 0; n <= order; ++n) {
        const cplx bracket = traj.derivative(t, n) * e_end - traj.derivative(t0, n);
        ex.boundary.push_back(-kInvSqrt2 * ipow * bracket);
        ex.truncated += ex.boundary.back();
        ipow *= I;
    }
    const cplx rem = num::integrate_complex(
        [&](double s) { return traj.derivative(s, order + 1) * std::exp(I * (s - t0)); }, t0, t);
    ex.remainder = kInvSqrt2 * (ipow / I) * rem;  // i^{N+1}

    if (traj.max_derivative() >= 3) {
        const double d2 = traj.derivative(t, 2), d3 = traj.derivative(t, 3);
        const double d4 = traj.derivative(t, 4);
        ex.fourth_order = kInvSqrt2 * (I * (d2 - d4) * (e_end - 1.0) - d3 * (e_end + 1.0));
    }

    // Max-norm ratios of successive derivatives on a sample grid.
    const int samples = 400;
    std::vector<double> norms(order + 2, 0.0);
    for (int i = 0; i <= samples; ++i) {
        const double s = t0 + (t - t0) * i / samples;
        for (int n = 0; n <= order + 1; ++n) norms[n] = std::max(norms[n], std::abs(traj.derivative(s, n)));
    }
    for (int n = 0; n <= order; ++n)
        if (norms[n] > 1e-300 && norms[n + 1] / norms[n] > 1.0) ex.hierarchy_violated = true;
    return ex;
}

LatticeSweep lattice_sweep(const LatticeBeamConfig& cfg, double tau, int samples) {
    cfg.validate();
    if (samples < 5) throw ValidationError("lattice_sweep: need at least 5 samples");
    LatticeSweep sw;
    sw.spacing = kPi / cfg.k;
    sw.valid = cfg.depth > kHarmonicDepthThreshold;
    const double k = cfg.k;
    for (int i = 0; i < samples; ++i) {
        const double t = -tau + 2.0 * tau * i / (samples - 1);
        const double th = theta_profile(t, cfg.tau_r, cfg.tau_i);
        // Analytic minima serve as guesses: b at k z = pi - theta, a at k z = delta / 2
        // with tan(delta) = tan(2 theta) / 2 on the branch continuous from pi to 0.
        const double zb = (kPi - th) / k;
        const double za = 0.5 * std::atan2(2.0 * std::sin(2 * th), 4.0 * std::cos(2 * th)) / k;
        const HarmonicWell wb = lattice_well(cfg, Level::b, th, zb);
        const HarmonicWell wa = lattice_well(cfg, Level::a, th, za < 0 ? za + sw.spacing : za);
        sw.t.push_back(t);
        sw.dx_b.push_back(wb.center - 0.5 * sw.spacing);
        sw.dx_a.push_back(wa.center - 0.5 * sw.spacing);
        sw.omega_b.push_back(wb.frequency);
        sw.omega_a.push_back(wa.frequency);
    }
    return sw;
}

MovingGateSetup lattice_setup(const LatticeSweep& sw) {
    const double d = sw.spacing;
    auto shifted = [](const std::vector<double>& v, double c) {
        std::vector<double> out(v);
        for (auto& x : out) x += c;
        return out;
    };
    return MovingGateSetup{
        Trajectory::sampled(sw.t, shifted(sw.dx_a, d), sw.omega_a),
        Trajectory::sampled(sw.t, shifted(sw.dx_b, d), sw.omega_b),
        Trajectory::sampled(sw.t, sw.dx_a, sw.omega_a),
        Trajectory::sampled(sw.t, sw.dx_b, sw.omega_b),
    };
}

LatticeBeamConfig lattice_benchmark() {
    const OscUnits u = OscUnits::from_frequency_hz(100e3);
    LatticeBeamConfig c;
    const double d = u.length_from_si(390e-9);
    c.k = kPi / d;
    // b-well curvature 2 depth k^2 equals omega^2 = 1.
    c.depth = 1.0 / (2.0 * c.k * c.k);
    c.tau_r = c.tau_i = 25.0;
    return c;
}

double lattice_benchmark_scattering_length() { return OscUnits::from_frequency_hz(100e3).length_from_si(5.1e-9); }

}  // namespace coldgate
