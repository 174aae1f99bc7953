#include "coldgate/gate_fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "coldgate/errors.hpp"

namespace coldgate {

namespace {

const cplx I(0.0, 1.0);
constexpr double kTailTarget = 1e-13;
constexpr double kSkipWeight = 1e-15;

struct LevelTerm {
    double weight;
    std::array<cplx, 4> b;  // conj(ideal_i) * A_i
};

std::vector<LevelTerm> level_table(const GateChannel& ch, const ThermalMotionalState& rho, bool symmetrized) {
    const auto& amp = symmetrized ? ch.symmetrized_amplitude : ch.amplitude;
    if (!amp) throw ValidationError("min_fidelity: channel '" + ch.name + "' has no " +
                                    (symmetrized ? "symmetrized " : "") + "amplitude table");
    std::vector<LevelTerm> out;
    for (int n1 = 0; n1 <= rho.n_max; ++n1)
        for (int n2 = 0; n2 <= rho.n_max; ++n2) {
            const double w = rho.p[n1] * rho.p[n2];
            if (w < kSkipWeight) continue;
            const ChannelAmplitudes a = amp(n1, n2);
            LevelTerm t{w, {}};
            for (int i = 0; i < 4; ++i) {
                if (std::abs(a[i]) > 1.0 + 1e-9)
                    throw ValidationError("channel '" + ch.name + "': motional amplitude exceeds 1");
                t.b[i] = std::conj(ch.ideal[i]) * a[i];
            }
            out.push_back(t);
        }
    return out;
}

double evaluate(const std::vector<LevelTerm>& table, const std::array<double, 4>& q) {
    double f = 0.0;
    for (const auto& t : table) {
        cplx s = 0.0;
        for (int i = 0; i < 4; ++i) s += q[i] * t.b[i];
        f += t.weight * std::norm(s);
    }
    return f;
}

InternalState state_from_angles(const std::array<double, 6>& x) {
    const double s0 = std::sin(x[0]), s1 = std::sin(x[1]);
    return {cplx(std::cos(x[0]), 0.0), s0 * std::cos(x[1]) * std::exp(I * x[3]),
            s0 * s1 * std::cos(x[2]) * std::exp(I * x[4]), s0 * s1 * std::sin(x[2]) * std::exp(I * x[5])};
}

std::array<double, 4> populations(const InternalState& c) {
    return {std::norm(c[0]), std::norm(c[1]), std::norm(c[2]), std::norm(c[3])};
}

std::array<double, 6> angles_from_populations(const std::array<double, 4>& q) {
    std::array<double, 6> x{};
    auto safe_acos = [](double v) { return std::acos(std::clamp(v, -1.0, 1.0)); };
    x[0] = safe_acos(std::sqrt(q[0]));
    const double r1 = q[1] + q[2] + q[3];
    x[1] = r1 > 0 ? safe_acos(std::sqrt(q[1] / r1)) : 0.0;
    const double r2 = q[2] + q[3];
    x[2] = r2 > 0 ? safe_acos(std::sqrt(q[2] / r2)) : 0.0;
    return x;
}

double radical_inverse(int i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

template <std::size_t N>
std::pair<std::array<double, N>, double> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                                                     std::array<double, N> x0, double step) {
    std::array<std::array<double, N>, N + 1> p;
    std::array<double, N + 1> v;
    p[0] = x0;
    for (std::size_t i = 0; i < N; ++i) {
        p[i + 1] = x0;
        p[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= N; ++i) v[i] = f(p[i]);
    for (int iter = 0; iter < 20000; ++iter) {
        std::array<std::size_t, N + 1> idx;
        for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        const std::size_t best = idx[0], worst = idx[N], second = idx[N - 1];
        double size = 0.0;
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t k = 0; k < N; ++k) size = std::max(size, std::abs(p[i][k] - p[best][k]));
        if (v[worst] - v[best] < 1e-15 && size < 1e-9) break;
        std::array<double, N> c{};
        for (std::size_t i = 0; i <= N; ++i)
            if (i != worst)
                for (std::size_t k = 0; k < N; ++k) c[k] += p[i][k] / N;
        auto along = [&](double t) {
            std::array<double, N> y;
            for (std::size_t k = 0; k < N; ++k) y[k] = c[k] + t * (p[worst][k] - c[k]);
            return y;
        };
        const auto xr = along(-1.0);
        const double fr = f(xr);
        if (fr < v[best]) {
            const auto xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) { p[worst] = xe; v[worst] = fe; }
            else { p[worst] = xr; v[worst] = fr; }
        } else if (fr < v[second]) {
            p[worst] = xr;
            v[worst] = fr;
        } else {
            const auto xc = fr < v[worst] ? along(-0.5) : along(0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, v[worst])) {
                p[worst] = xc;
                v[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= N; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < N; ++k) p[i][k] = p[best][k] + 0.5 * (p[i][k] - p[best][k]);
                    v[i] = f(p[i]);
                }
            }
        }
    }
    const std::size_t b = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    return {p[b], v[b]};
}

}  // namespace

ThermalMotionalState thermal_state(double omega, double kT, int n_max) {
    if (!(kT >= 0)) throw ValidationError("thermal_state: kT must be non-negative");
    if (!(omega > 0)) throw ValidationError("thermal_state: omega must be positive");
    ThermalMotionalState s;
    s.omega = omega;
    s.kT = kT;
    const double x = kT > 0 ? std::exp(-omega / kT) : 0.0;
    int n = std::max(n_max, 0);
    while (std::pow(x, n + 1) >= kTailTarget) ++n;
    s.n_max = n;
    s.tail = std::pow(x, n + 1);
    for (int k = 0; k <= n; ++k) s.p.push_back((1.0 - x) * std::pow(x, k));
    return s;
}

GateChannel ideal_channel(const std::array<cplx, 4>& phases) {
    GateChannel ch;
    ch.ideal = phases;
    ch.amplitude = [phases](int n1, int n2) {
        (void)n1;
        (void)n2;
        return phases;
    };
    ch.symmetrized_amplitude = ch.amplitude;
    ch.name = "ideal";
    return ch;
}

double fidelity_at(const GateChannel& ch, const ThermalMotionalState& rho, bool sym, const InternalState& c) {
    double norm = 0.0;
    for (const auto& a : c) norm += std::norm(a);
    auto q = populations(c);
    for (auto& v : q) v /= norm;
    return evaluate(level_table(ch, rho, sym), q);
}

FidelityResult min_fidelity(const GateChannel& ch, const ThermalMotionalState& rho, bool sym) {
    const auto table = level_table(ch, rho, sym);
    std::function<double(const std::array<double, 6>&)> f = [&](const std::array<double, 6>& x) {
        return evaluate(table, populations(state_from_angles(x)));
    };
    std::vector<std::array<double, 6>> starts;
    for (int i = 1; i <= 32; ++i) {
        std::array<double, 6> x{};
        const int primes[6] = {2, 3, 5, 7, 11, 13};
        for (int k = 0; k < 3; ++k) x[k] = 0.5 * kPi * radical_inverse(i, primes[k]);
        for (int k = 3; k < 6; ++k) x[k] = 2 * kPi * radical_inverse(i, primes[k]);
        starts.push_back(x);
    }
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> q{};
        q[i] = 1.0;
        starts.push_back(angles_from_populations(q));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::array<double, 4> q{};
            q[i] = q[j] = 0.5;
            starts.push_back(angles_from_populations(q));
        }
    std::vector<std::pair<double, std::array<double, 6>>> results;
    for (const auto& s : starts) {
        auto [x, v] = nelder_mead<6>(f, s, 0.3);
        results.emplace_back(v, x);
    }
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    FidelityResult r;
    r.fidelity = results[0].first;
    r.worst_state = state_from_angles(results[0].second);
    r.spread = results[2].first - results[0].first;
    r.starts = static_cast<int>(starts.size());
    if (r.spread > 1e-6)
        throw OptimizationNotConverged("min_fidelity: multi-start spread " + num::format_double(r.spread));
    return r;
}

TimingCurve timing_sensitivity(const std::function<GateChannel(double)>& factory, double tau0, double delta,
                               int half_count, const ThermalMotionalState& rho, bool sym) {
    TimingCurve c;
    for (int k = -half_count; k <= half_count; ++k) {
        c.offsets.push_back(k * delta);
        c.fidelity.push_back(min_fidelity(factory(tau0 + k * delta), rho, sym).fidelity);
    }
    const double f0 = c.fidelity[half_count];
    const double target = f0 - 0.01;
    double sum = 0.0;
    int found = 0;
    for (int dir : {-1, 1}) {
        for (int k = 1; k <= half_count; ++k) {
            const double fa = c.fidelity[half_count + dir * (k - 1)], fb = c.fidelity[half_count + dir * k];
            if (fb <= target) {
                const double frac = fa == fb ? 1.0 : (fa - target) / (fa - fb);
                sum += std::abs(delta) * (k - 1 + frac);
                ++found;
                break;
            }
        }
    }
    c.half_width = found == 2 ? sum / 2 : std::numeric_limits<double>::quiet_NaN();
    return c;
}

GateChannel switching_channel(const SwitchingConfig& cfg, const SwitchTimeSeries& bb, double tau, double tau_cal) {
    if (bb.amplitude_single.empty() || bb.amplitude_product.empty())
        throw ValidationError("switching_channel: (b,b) series lacks single-particle and product amplitudes");
    auto unit = [](cplx z) { return z / std::abs(z); };
    auto ca = [&](double t) { return std::exp(-I * 0.5 * cfg.omega0 * t); };
    const cplx ua = unit(ca(tau_cal)), ub = unit(bb.at(bb.amplitude_single, tau_cal));
    const cplx a_aa = ca(tau) * ca(tau) / (ua * ua);
    const cplx a_ab = ca(tau) * bb.at(bb.amplitude_single, tau) / (ua * ub);
    const cplx a_sym = bb.at(bb.amplitude_init, tau) / (ub * ub);
    const cplx a_prod = bb.at(bb.amplitude_product, tau) / (ub * ub);
    GateChannel ch;
    ch.name = "switching";
    ch.ideal = {1.0, 1.0, 1.0, -1.0};
    const ChannelAmplitudes zero{0.0, 0.0, 0.0, 0.0};
    ch.amplitude = [=](int n1, int n2) {
        return (n1 || n2) ? zero : ChannelAmplitudes{a_aa, a_ab, a_ab, a_prod};
    };
    ch.symmetrized_amplitude = [=](int n1, int n2) {
        return (n1 || n2) ? zero : ChannelAmplitudes{a_aa, a_ab, a_ab, a_sym};
    };
    return ch;
}

double level_collision_phase(const Trajectory& first, const Trajectory& second, int n1, int n2, double a_s,
                             const GaussianGeometry& g) {
    const double t0 = std::max(first.t_begin(), second.t_begin());
    const double t1 = std::min(first.t_end(), second.t_end());
    if (!(t1 > t0) || a_s == 0.0) return 0.0;
    const double pref = 4.0 * kPi * a_s / (2.0 * kPi * g.width_y * g.width_z);
    const int points = 600;
    auto shift = [&](double t) {
        const double w1 = 1.0 / std::sqrt(first.frequency(t)), w2 = 1.0 / std::sqrt(second.frequency(t));
        const double c1 = first.position(t), c2 = second.position(t);
        const double r1 = (std::sqrt(2.0 * n1 + 1.0) + 7.0) * w1, r2 = (std::sqrt(2.0 * n2 + 1.0) + 7.0) * w2;
        const double lo = std::max(c1 - r1, c2 - r2), hi = std::min(c1 + r1, c2 + r2);
        if (!(hi > lo)) return 0.0;
        const double h = (hi - lo) / points;
        double sum = 0.0;
        for (int j = 0; j <= points; ++j) {
            const double x = lo + j * h;
            const double p1 = num::hermite_function(n1, (x - c1) / w1);
            const double p2 = num::hermite_function(n2, (x - c2) / w2);
            const double v = p1 * p1 * p2 * p2 / (w1 * w2);
            sum += (j == 0 || j == points) ? 0.5 * v : v;
        }
        return pref * sum * h;
    };
    return num::integrate(shift, t0, t1, 1e-9);
}

GateChannel moving_channel(const MovingGateModel& m) {
    struct Single {
        cplx phase;      // e^{i beta}
        double alpha2;   // |alpha|^2 at the end
        double level_shift;  // int (omega(t) - 1) dt
    };
    auto single = [](const Trajectory& x) {
        const Trajectory rel = x.offset(-x.position(x.t_begin()));
        const CoherentEvolution ev = evolve_coherent(rel, rel.t_end());
        double shift = 0.0;
        if (x.has_frequency_profile())
            shift = num::integrate([&](double t) { return x.frequency(t) - 1.0; }, x.t_begin(), x.t_end(), 1e-10);
        return Single{std::exp(I * ev.beta), std::norm(ev.alpha()), shift};
    };
    const Single s1a = single(m.setup.p1_a), s1b = single(m.setup.p1_b);
    const Single s2a = single(m.setup.p2_a), s2b = single(m.setup.p2_b);
    auto level = [](const Single& s, int n) {
        return s.phase * num::laguerre(n, s.alpha2) * std::exp(-I * double(n) * s.level_shift);
    };
    const double phi_aa = collisional_phase(m.setup.p1_a, m.setup.p2_a, m.scattering.aa, true, m.geometry).phase;
    const double phi_bb = collisional_phase(m.setup.p1_b, m.setup.p2_b, m.scattering.bb, true, m.geometry).phase;

    struct Cache {
        std::mutex mtx;
        std::map<std::pair<int, int>, std::pair<double, double>> phases;
    };
    auto cache = std::make_shared<Cache>();
    auto model = std::make_shared<MovingGateModel>(m);
    auto collision = [cache, model](int n1, int n2) {
        std::lock_guard<std::mutex> lock(cache->mtx);
        auto it = cache->phases.find({n1, n2});
        if (it != cache->phases.end()) return it->second;
        const auto& st = model->setup;
        const double ab = level_collision_phase(st.p1_a, st.p2_b, n1, n2, model->scattering.ab, model->geometry);
        const double ba = level_collision_phase(st.p1_b, st.p2_a, n1, n2, model->scattering.ab, model->geometry);
        return cache->phases[{n1, n2}] = {ab, ba};
    };

    auto amplitudes = [=](int n1, int n2) {
        const auto [ab, ba] = collision(n1, n2);
        return ChannelAmplitudes{level(s1a, n1) * level(s2a, n2) * std::exp(-I * phi_aa),
                                 level(s1a, n1) * level(s2b, n2) * std::exp(-I * ab),
                                 level(s1b, n1) * level(s2a, n2) * std::exp(-I * ba),
                                 level(s1b, n1) * level(s2b, n2) * std::exp(-I * phi_bb)};
    };
    GateChannel ch;
    ch.name = "moving";
    const ChannelAmplitudes ground = amplitudes(0, 0);
    for (int i = 0; i < 4; ++i) ch.ideal[i] = ground[i] / std::abs(ground[i]);
    ch.amplitude = amplitudes;
    ch.symmetrized_amplitude = amplitudes;
    return ch;
}

}  // namespace coldgate

namespace coldgate {

SwitchingFidelityReport switching_fidelity(const SwitchingConfig& cfg, const SwitchTimeSeries& bb, int n,
                                           double delta, int half_count) {
    const double T = cfg.period();
    const ThermalMotionalState ground = thermal_state(cfg.omega, 0.0);
    auto fid = [&](double tau) { return min_fidelity(switching_channel(cfg, bb, tau, tau), ground, true).fidelity; };
    const double lo = (n - 0.02) * T, hi = std::min((n + 0.04) * T, bb.t.back());
    if (!(hi > lo)) throw ValidationError("switching_fidelity: time series too short for the hold-time scan");
    const double step = 5e-4 * T;
    double best_t = lo, best_f = -1.0;
    for (double t = lo; t <= hi; t += step) {
        const double f = fid(t);
        if (f > best_f) {
            best_f = f;
            best_t = t;
        }
    }
    const double t0 = num::golden_section_min([&](double t) { return -fid(t); }, std::max(lo, best_t - step),
                                              std::min(hi, best_t + step), 1e-7 * T);
    SwitchingFidelityReport r;
    r.tau0 = t0;
    r.fidelity = fid(t0);
    r.fidelity_unsymmetrized = min_fidelity(switching_channel(cfg, bb, t0, t0), ground, false).fidelity;
    r.timing = timing_sensitivity([&](double t) { return switching_channel(cfg, bb, t, t0); }, t0, delta * T,
                                  half_count, ground, true);
    return r;
}

}  // namespace coldgate
