#include "coldgate/switching_gate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "coldgate/errors.hpp"

namespace coldgate {

namespace {

const cplx I(0.0, 1.0);

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// In-place FFT of a fixed size, usable on any array of that size.
class Fft {
public:
    Fft(int n0, int n1) : size_(std::size_t(n0) * std::max(n1, 1)) {
        std::vector<cplx> tmp(size_);
        std::lock_guard<std::mutex> lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (n1 <= 0) {
            fwd_ = fftw_plan_dft_1d(n0, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_FORWARD, flags);
            bwd_ = fftw_plan_dft_1d(n0, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_BACKWARD, flags);
        } else {
            fwd_ = fftw_plan_dft_2d(n0, n1, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_FORWARD, flags);
            bwd_ = fftw_plan_dft_2d(n0, n1, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_BACKWARD, flags);
        }
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(std::vector<cplx>& v) const { fftw_execute_dft(fwd_, as_fftw(v.data()), as_fftw(v.data())); }
    void backward(std::vector<cplx>& v) const { fftw_execute_dft(bwd_, as_fftw(v.data()), as_fftw(v.data())); }

private:
    std::size_t size_;
    fftw_plan fwd_, bwd_;
};

struct Axis {
    int n;
    double dx;
    std::vector<double> x, k;
};

Axis make_axis(int n, double half) {
    if (n < 8 || n % 2) throw ValidationError("grid: point count must be even and >= 8");
    Axis a{n, 2.0 * half / n, {}, {}};
    for (int j = 0; j < n; ++j) {
        a.x.push_back(-half + j * a.dx);
        const int m = j < n / 2 ? j : j - n;
        a.k.push_back(2.0 * kPi * m / (n * a.dx));
    }
    return a;
}

// Split-step propagator for a time-independent potential on a 1D or 2D grid.
class SplitStep {
public:
    SplitStep(const Axis& axis, bool two_d, const std::vector<double>& potential,
              std::vector<double> masses, double dt)
        : fft_(axis.n, two_d ? axis.n : 0) {
        const std::size_t n = axis.n;
        const std::size_t size = two_d ? n * n : n;
        half_v_.resize(size);
        for (std::size_t i = 0; i < size; ++i) half_v_[i] = std::exp(-I * potential[i] * dt * 0.5);
        kin_.resize(size);
        const double scale = 1.0 / double(size);
        for (std::size_t i = 0; i < size; ++i) {
            double e = 0.0;
            if (two_d) {
                const double k1 = axis.k[i / n], k2 = axis.k[i % n];
                e = k1 * k1 / (2 * masses[0]) + k2 * k2 / (2 * masses[1]);
            } else {
                e = axis.k[i] * axis.k[i] / (2 * masses[0]);
            }
            kin_[i] = std::exp(-I * e * dt) * scale;
        }
    }

    void step(std::vector<cplx>& psi) const {
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_v_[i];
        fft_.forward(psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= kin_[i];
        fft_.backward(psi);
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_v_[i];
    }

private:
    Fft fft_;
    std::vector<cplx> half_v_, kin_;
};

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b, double weight) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * weight;
}

void normalize(std::vector<cplx>& v, double weight) {
    const double n = std::sqrt(std::real(inner(v, v, weight)));
    for (auto& c : v) c /= n;
}

std::vector<cplx> gaussian(const Axis& ax, double center, double mass_omega) {
    std::vector<cplx> v(ax.n);
    for (int j = 0; j < ax.n; ++j) {
        const double d = ax.x[j] - center;
        v[j] = std::exp(-0.5 * mass_omega * d * d);
    }
    normalize(v, ax.dx);
    return v;
}

// A grid-point delta in a basis with momentum cutoff pi/dx scatters like a stronger
// continuum delta; 1/g_grid = 1/g + 2 mu dx / pi^2 restores the continuum amplitude.
double renormalized(double g, double mu, double dx) { return g / (1.0 + 2.0 * mu * g * dx / (kPi * kPi)); }

double contact(const Axis& ax, int j, double r, double g, ContactModel model) {
    if (model == ContactModel::grid_point) return j == ax.n / 2 ? g / ax.dx : 0.0;
    const double s = 2.0 * ax.dx;
    return g * std::exp(-r * r / (2 * s * s)) / (std::sqrt(2 * kPi) * s);
}

struct Stepping {
    int steps;
    double dt;
};

// Explicit steps per period, or (per_period == 0) the smallest count with
// E_max dt <= 1 for the grid's kinetic cutoff, and never below 2000.
Stepping stepping(const SwitchingConfig& cfg, double tau, int per_period, double e_max) {
    if (per_period == 0) per_period = std::max(2000, static_cast<int>(std::ceil(cfg.period() * e_max)));
    if (per_period < 2000) throw ValidationError("propagate: need at least 2000 steps per period");
    const double dt0 = cfg.period() / per_period;
    const int steps = std::max(1, static_cast<int>(std::ceil(tau / dt0 - 1e-9)));
    return {steps, tau / steps};
}

SwitchTimeSeries run_bb(const SwitchingConfig& cfg, double tau, const GridOptions& o) {
    const Axis ax = make_axis(o.points, o.extent);
    const double mu = 0.5;
    SwitchTimeSeries s;
    s.g = effective_coupling(cfg.a_bb, cfg) * o.g_scale;
    const double kmax = kPi / ax.dx;
    const Stepping st = stepping(cfg, tau, o.steps_per_period, kmax * kmax / (2 * mu));

    std::vector<double> v_free(ax.n), v_int(ax.n), v_single(ax.n);
    for (int j = 0; j < ax.n; ++j) {
        const double r = ax.x[j];
        v_free[j] = 0.5 * mu * cfg.omega * cfg.omega * r * r;
        const double g = o.contact == ContactModel::grid_point ? renormalized(s.g, mu, ax.dx) : s.g;
        v_int[j] = v_free[j] + contact(ax, j, r, g, o.contact);
        v_single[j] = 0.5 * cfg.omega * cfg.omega * r * r;
    }
    const SplitStep prop_int(ax, false, v_int, {mu}, st.dt);
    const SplitStep prop_free(ax, false, v_free, {mu}, st.dt);

    // Relative ground states of the initial wells sit at r = +-2 x0.
    std::vector<cplx> left = gaussian(ax, -2 * cfg.x0, mu * cfg.omega0);
    std::vector<cplx> right = gaussian(ax, 2 * cfg.x0, mu * cfg.omega0);
    std::vector<cplx> psi(ax.n);
    for (int j = 0; j < ax.n; ++j) psi[j] = left[j] + right[j];
    normalize(psi, ax.dx);
    const std::vector<cplx> psi0 = psi;
    std::vector<cplx> ref = psi;
    std::vector<cplx> prod = right;
    const std::vector<cplx> prod0 = prod;

    std::unique_ptr<SplitStep> prop_single;
    std::vector<cplx> single, single0;
    if (o.product_state) {
        prop_single = std::make_unique<SplitStep>(ax, false, v_single, std::vector<double>{1.0}, st.dt);
        single = gaussian(ax, cfg.x0, cfg.omega0);
        single0 = single;
    }

    auto record = [&](double t) {
        const cplx ov = inner(ref, psi, ax.dx);
        s.t.push_back(t);
        s.phase.push_back(-std::arg(ov));
        s.overlap_ni.push_back(std::norm(ov));
        const cplx amp = cm_amplitude_analytic(cfg.omega0, cfg.omega, t) * inner(psi0, psi, ax.dx);
        s.amplitude_init.push_back(amp);
        s.overlap_init.push_back(std::norm(amp));
        if (o.product_state) {
            s.amplitude_product.push_back(cm_amplitude_analytic(cfg.omega0, cfg.omega, t) *
                                          inner(prod0, prod, ax.dx));
            s.amplitude_single.push_back(inner(single0, single, ax.dx));
        }
    };
    record(0.0);
    for (int k = 1; k <= st.steps; ++k) {
        prop_int.step(psi);
        prop_free.step(ref);
        if (o.product_state) {
            prop_int.step(prod);
            prop_single->step(single);
        }
        record(k * st.dt);
    }
    num::unwrap(s.phase);
    s.norm_drift = std::abs(std::real(inner(psi, psi, ax.dx)) - 1.0);
    double anti = 0.0;
    for (int j = 1; j < ax.n; ++j) anti += std::norm(0.5 * (psi[j] - psi[ax.n - j]));
    s.antisymmetric_norm = anti * ax.dx;
    return s;
}

SwitchTimeSeries run_ab(const SwitchingConfig& cfg, double tau, const GridOptions& o) {
    const Axis ax = make_axis(o.points_2d, o.extent_2d);
    const int n = ax.n;
    SwitchTimeSeries s;
    s.g = effective_coupling(cfg.a_ab, cfg) * o.g_scale;
    s.revives = false;
    s.warnings.push_back("(a,b) channel: non-revival; the gate of record uses the transverse-displacement variant");
    const double kmax = kPi / ax.dx;
    const Stepping st = stepping(cfg, tau, o.steps_per_period, kmax * kmax);
    const double side = o.mirror ? -1.0 : 1.0;

    std::vector<double> va(n), vb(n);
    for (int j = 0; j < n; ++j) {
        const double d = std::abs(ax.x[j]) - cfg.x0;
        va[j] = 0.5 * cfg.omega0 * cfg.omega0 * d * d;
        vb[j] = 0.5 * cfg.omega * cfg.omega * ax.x[j] * ax.x[j];
    }
    std::vector<double> v2(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = va[i] + vb[j];
            if (o.contact == ContactModel::grid_point) {
                if (i == j) v += renormalized(s.g, 0.5, ax.dx) / ax.dx;
            } else {
                const double r = ax.x[i] - ax.x[j], w = 2.0 * ax.dx;
                v += s.g * std::exp(-r * r / (2 * w * w)) / (std::sqrt(2 * kPi) * w);
            }
            v2[std::size_t(i) * n + j] = v;
        }
    const SplitStep prop2(ax, true, v2, {1.0, 1.0}, st.dt);
    const SplitStep prop_a(ax, false, va, {1.0}, st.dt);
    const SplitStep prop_b(ax, false, vb, {1.0}, st.dt);

    std::vector<cplx> fa = gaussian(ax, side * cfg.x0, cfg.omega0);
    std::vector<cplx> fb = gaussian(ax, -side * cfg.x0, cfg.omega0);
    std::vector<cplx> psi(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) psi[std::size_t(i) * n + j] = fa[i] * fb[j];
    const std::vector<cplx> psi0 = psi;
    const double w2 = ax.dx * ax.dx;

    auto record = [&](double t) {
        cplx ov = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx row = 0.0;
            for (int j = 0; j < n; ++j) row += std::conj(fb[j]) * psi[std::size_t(i) * n + j];
            ov += std::conj(fa[i]) * row;
        }
        ov *= w2;
        s.t.push_back(t);
        s.phase.push_back(-std::arg(ov));
        s.overlap_ni.push_back(std::norm(ov));
        const cplx amp = inner(psi0, psi, w2);
        s.amplitude_init.push_back(amp);
        s.overlap_init.push_back(std::norm(amp));
    };
    record(0.0);
    for (int k = 1; k <= st.steps; ++k) {
        prop2.step(psi);
        prop_a.step(fa);
        prop_b.step(fb);
        record(k * st.dt);
    }
    num::unwrap(s.phase);
    s.norm_drift = std::abs(std::real(inner(psi, psi, w2)) - 1.0);
    return s;
}

}  // namespace

double cm_overlap_analytic(double omega0, double omega, double t) {
    const double s = std::sin(omega * t);
    const double c = (omega0 * omega0 - omega * omega);
    return 1.0 / std::sqrt(1.0 + c * c / (4 * omega0 * omega0 * omega * omega) * s * s);
}

cplx cm_amplitude_analytic(double omega0, double omega, double t) {
    // [cos wt + i (w0^2 + w^2)/(2 w0 w) sin wt]^{-1/2} on the continuous branch.
    const double r = (omega0 * omega0 + omega * omega) / (2 * omega0 * omega);
    const cplx z(std::cos(omega * t), r * std::sin(omega * t));
    double arg = std::atan2(z.imag(), z.real());
    // atan2 jumps by 2pi every half period; count full turns of omega t.
    const double turns = std::floor((omega * t + kPi) / (2 * kPi));
    arg += 2 * kPi * turns;
    return std::exp(cplx(-0.5 * std::log(std::abs(z)), -0.5 * arg));
}

double effective_coupling(double a_s, const SwitchingConfig& cfg) { return 2.0 * a_s * cfg.omega_perp(); }

double energy_shift_bb(const SwitchingConfig& cfg, double t) {
    const double w = cfg.omega, w0 = cfg.omega0;
    const double s = std::sin(w * t), c = std::cos(w * t);
    const double big = w * w * w0 / (w * w * c * c + w0 * w0 * s * s);
    return cfg.a_bb * cfg.omega_perp() * std::sqrt(8 * big / kPi) *
           std::exp(-2 * w0 * cfg.x0 * cfg.x0 * (1 - s * s * w0 * big / (w * w)));
}

PerturbativePhase phase_per_period_perturbative(const SwitchingConfig& cfg) {
    cfg.validate();
    PerturbativePhase p;
    const double w = cfg.omega, w0 = cfg.omega0;
    p.saddle_point = 8 * cfg.a_bb *
                     std::sqrt(w0 * cfg.omega_y * cfg.omega_z /
                               (w0 * w0 + w * w * (4 * cfg.x0 * cfg.x0 * w0 - 1)));
    p.quadrature = num::integrate([&](double t) { return energy_shift_bb(cfg, t); }, 0.0, cfg.period(), 1e-12);
    return p;
}

double SwitchTimeSeries::at(const std::vector<double>& series, double tq) const {
    if (t.size() < 2) throw ValidationError("time series too short");
    const double dt = t[1] - t[0];
    const double pos = std::clamp((tq - t[0]) / dt, 0.0, double(t.size() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(pos), t.size() - 2);
    const double f = pos - double(i);
    return series[i] * (1 - f) + series[i + 1] * f;
}

cplx SwitchTimeSeries::at(const std::vector<cplx>& series, double tq) const {
    if (t.size() < 2) throw ValidationError("time series too short");
    const double dt = t[1] - t[0];
    const double pos = std::clamp((tq - t[0]) / dt, 0.0, double(t.size() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(pos), t.size() - 2);
    const double f = pos - double(i);
    return series[i] * (1 - f) + series[i + 1] * f;
}

std::string SwitchTimeSeries::to_csv(double period, int stride) const {
    std::ostringstream os;
    os << "t_over_T,phase_over_pi,overlap_ni,overlap_init\n";
    for (std::size_t i = 0; i < t.size(); i += std::max(stride, 1)) {
        os << num::format_double(t[i] / period) << ',' << num::format_double(phase[i] / kPi) << ','
           << num::format_double(overlap_ni[i]) << ',' << num::format_double(overlap_init[i]) << '\n';
    }
    return os.str();
}

void extract_revivals(SwitchTimeSeries& s, double period) {
    s.revival_times.clear();
    if (s.t.size() < 3) return;
    const double dt = s.t[1] - s.t[0];
    for (int k = 1;; ++k) {
        const double lo = (k - 0.05) * period, hi = (k + 0.05) * period;
        if (hi > s.t.back()) break;
        std::size_t best = 0;
        double fbest = -1.0;
        for (std::size_t i = 1; i + 1 < s.t.size(); ++i) {
            if (s.t[i] < lo || s.t[i] > hi) continue;
            if (s.overlap_init[i] > fbest) {
                fbest = s.overlap_init[i];
                best = i;
            }
        }
        const double fm = s.overlap_init[best - 1], f0 = s.overlap_init[best], fp = s.overlap_init[best + 1];
        const double denom = fm - 2 * f0 + fp;
        const double shift = denom != 0.0 ? 0.5 * (fm - fp) / denom : 0.0;
        s.revival_times.push_back(s.t[best] + shift * dt);
    }
    if (s.revival_times.empty()) {
        s.warnings.push_back("no complete revival window; delta_T not extracted");
        s.delta_T = 0.0;
        return;
    }
    double num_ = 0.0, den = 0.0;
    for (std::size_t k = 0; k < s.revival_times.size(); ++k) {
        num_ += (k + 1.0) * s.revival_times[k];
        den += (k + 1.0) * (k + 1.0);
    }
    s.delta_T = num_ / den - period;
}

SwitchTimeSeries propagate(const SwitchingConfig& cfg, Channel channel, double tau, const GridOptions& opts) {
    cfg.validate();
    if (!(tau > 0)) throw ValidationError("propagate: tau must be positive");
    SwitchTimeSeries s = channel == Channel::bb ? run_bb(cfg, tau, opts) : run_ab(cfg, tau, opts);
    if (s.norm_drift > 1e-6) throw NormLoss("propagate: norm drift " + num::format_double(s.norm_drift));
    if (opts.check_convergence) {
        GridOptions fine = opts;
        fine.product_state = false;
        fine.check_convergence = false;
        if (channel == Channel::bb) fine.points *= 2;
        else fine.points_2d *= 2;
        const SwitchTimeSeries f = channel == Channel::bb ? run_bb(cfg, tau, fine) : run_ab(cfg, tau, fine);
        const double diff = std::abs(f.phase.back() - s.phase.back());
        if (diff >= 1e-3)
            throw ConvergenceError("propagate: halving dx changed the final phase by " + num::format_double(diff) +
                                   " rad");
    }
    extract_revivals(s, cfg.period());
    return s;
}

std::vector<double> cm_overlap_grid(const SwitchingConfig& cfg, const std::vector<double>& times,
                                    const GridOptions& o) {
    const Axis ax = make_axis(o.points, o.extent);
    const double M = 2.0;
    std::vector<double> v(ax.n);
    for (int j = 0; j < ax.n; ++j) v[j] = 0.5 * M * cfg.omega * cfg.omega * ax.x[j] * ax.x[j];
    std::vector<cplx> phi = gaussian(ax, 0.0, M * cfg.omega0);
    const std::vector<cplx> phi0 = phi;
    std::vector<double> out;
    double t = 0.0;
    // Smooth Gaussian states: the Strang error is set by dt alone, so use a fixed fine step.
    const int per_period = o.steps_per_period > 0 ? o.steps_per_period : 20000;
    const double dt_max = cfg.period() / per_period;
    for (double target : times) {
        if (target < t) throw ValidationError("cm_overlap_grid: times must be sorted");
        const int steps = static_cast<int>(std::ceil((target - t) / dt_max - 1e-9));
        if (steps > 0) {
            const SplitStep prop(ax, false, v, {M}, (target - t) / steps);
            for (int k = 0; k < steps; ++k) prop.step(phi);
        }
        t = target;
        out.push_back(std::norm(inner(phi0, phi, ax.dx)));
    }
    return out;
}

NetPhase net_phase_gate(const SwitchingConfig& cfg, int n, SwitchingVariant variant, const GridOptions& opts) {
    if (n < 1) throw ValidationError("net_phase_gate: n must be >= 1");
    NetPhase r;
    const double T = cfg.period();
    r.bb = propagate(cfg, Channel::bb, (n + 0.06) * T, opts);
    r.delta_T = r.bb.delta_T;
    r.tau = n * (T + r.delta_T);
    r.phi_bb = r.bb.at(r.bb.phase, r.tau);
    r.revival_overlap = r.bb.at(r.bb.overlap_init, r.tau);
    if (variant == SwitchingVariant::collinear && cfg.a_ab != 0.0) {
        GridOptions o = opts;
        o.mirror = false;
        r.phi_ab = propagate(cfg, Channel::ab, r.tau, o).phase.back();
        o.mirror = true;
        r.phi_ba = propagate(cfg, Channel::ab, r.tau, o).phase.back();
        if (std::abs(r.phi_ab - r.phi_ba) > 1e-6)
            throw ConvergenceError("net_phase_gate: phi_ab and phi_ba differ by " +
                                   num::format_double(std::abs(r.phi_ab - r.phi_ba)));
    }
    r.net_phase = r.phi_bb - 2.0 * r.phi_ab;
    return r;
}

}  // namespace coldgate

namespace coldgate {

GridWavefunction propagate_moving_trap(const Trajectory& traj, int points, double extent, int steps) {
    if (steps < 1) throw ValidationError("propagate_moving_trap: steps must be positive");
    const Axis ax = make_axis(points, extent);
    const double t0 = traj.t_begin(), dt = (traj.t_end() - t0) / steps;
    std::vector<cplx> psi = gaussian(ax, traj.position(t0), 1.0);
    const Fft fft(ax.n, 0);
    std::vector<cplx> kin(ax.n), half(ax.n);
    for (int j = 0; j < ax.n; ++j) kin[j] = std::exp(-I * 0.5 * ax.k[j] * ax.k[j] * dt) / double(ax.n);
    for (int s = 0; s < steps; ++s) {
        const double c = traj.position(t0 + (s + 0.5) * dt);
        for (int j = 0; j < ax.n; ++j) {
            const double d = ax.x[j] - c;
            half[j] = std::exp(-I * 0.25 * d * d * dt);
        }
        for (int j = 0; j < ax.n; ++j) psi[j] *= half[j];
        fft.forward(psi);
        for (int j = 0; j < ax.n; ++j) psi[j] *= kin[j];
        fft.backward(psi);
        for (int j = 0; j < ax.n; ++j) psi[j] *= half[j];
    }
    const double drift = std::abs(std::real(inner(psi, psi, ax.dx)) - 1.0);
    if (drift > 1e-6) throw NormLoss("propagate_moving_trap: norm drift " + num::format_double(drift));
    return {ax.x, std::move(psi), ax.dx};
}

}  // namespace coldgate
