#include "coldgate/mott_loading.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "coldgate/errors.hpp"
#include "coldgate/numerics.hpp"

namespace coldgate {

double superlattice(double x, double y, double amplitude, double period) {
    if (!(period > 0)) throw ValidationError("superlattice: period must be positive");
    const double sx = std::sin(kPi * x / period), sy = std::sin(kPi * y / period);
    return amplitude * (sx * sx + sy * sy);
}

void BoseHubbardLattice::validate() const {
    if (lx < 1 || ly < 1) throw ValidationError("BoseHubbardLattice: dimensions must be >= 1");
    if (!(U > 0)) throw ValidationError("BoseHubbardLattice: U must be positive");
    if (!(J >= 0)) throw ValidationError("BoseHubbardLattice: J must be non-negative");
    if (!offsets.empty() && static_cast<int>(offsets.size()) != sites())
        throw ValidationError("BoseHubbardLattice: offsets size does not match lattice");
}

std::vector<int> BoseHubbardLattice::neighbors(int i) const {
    const int x = i % lx, y = i / lx;
    std::vector<int> out;
    auto add = [&](int nx, int ny) {
        if (boundary == Boundary::periodic) {
            nx = (nx + lx) % lx;
            ny = (ny + ly) % ly;
        } else if (nx < 0 || nx >= lx || ny < 0 || ny >= ly) {
            return;
        }
        const int j = ny * lx + nx;
        if (j != i && std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    };
    add(x - 1, y);
    add(x + 1, y);
    add(x, y - 1);
    add(x, y + 1);
    return out;
}

BoseHubbardLattice BoseHubbardLattice::with_superlattice(int lx, int ly, double J, double U, double mu,
                                                         double amplitude, double period, Boundary bc) {
    BoseHubbardLattice lat;
    lat.lx = lx;
    lat.ly = ly;
    lat.J = J;
    lat.U = U;
    lat.mu = mu;
    lat.boundary = bc;
    lat.offsets.resize(static_cast<std::size_t>(lx) * ly);
    for (int y = 0; y < ly; ++y)
        for (int x = 0; x < lx; ++x)
            lat.offsets[y * lx + x] = superlattice(x * lat.spacing, y * lat.spacing, amplitude, period);
    return lat;
}

namespace {

double expect_b(const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t n = 0; n + 1 < f.size(); ++n) s += std::sqrt(double(n + 1)) * f[n] * f[n + 1];
    return s;
}

double onsite(const BoseHubbardLattice& lat, int i, const std::vector<double>& f) {
    double e = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n)
        e += f[n] * f[n] * (0.5 * lat.U * n * (n - 1.0) + (lat.offset(i) - lat.mu) * n);
    return e;
}

// Ground state of the single-site mean-field Hamiltonian; ties go to the lower particle number.
std::vector<double> site_ground(const BoseHubbardLattice& lat, int i, double field, int n_max) {
    const int d = n_max + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n < d; ++n) h(n, n) = 0.5 * lat.U * n * (n - 1.0) + (lat.offset(i) - lat.mu) * n;
    for (int n = 0; n + 1 < d; ++n) h(n, n + 1) = h(n + 1, n) = -lat.J * field * std::sqrt(double(n + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    int pick = 0;
    if (field == 0.0) {
        // Fock states; choose the lowest-energy one with the fewest particles.
        pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int n = 0; n < d; ++n)
            if (pick < 0 || h(n, n) < best - 1e-12 * std::max(1.0, std::abs(best))) {
                best = h(n, n);
                pick = n;
            }
        std::vector<double> f(d, 0.0);
        f[pick] = 1.0;
        return f;
    }
    std::vector<double> f(d);
    double sum = 0.0;
    for (int n = 0; n < d; ++n) sum += es.eigenvectors()(n, pick);
    const double sign = sum < 0 ? -1.0 : 1.0;
    for (int n = 0; n < d; ++n) f[n] = sign * es.eigenvectors()(n, pick);
    return f;
}

struct Run {
    std::vector<std::vector<double>> f;
    std::vector<double> history;
    int sweeps = 0;
    bool converged = false;
};

Run relax(const BoseHubbardLattice& lat, std::vector<std::vector<double>> f, int n_max, const GutzwillerOptions& o) {
    Run r;
    const int ns = lat.sites();
    std::vector<double> phi(ns);
    for (int i = 0; i < ns; ++i) phi[i] = expect_b(f[i]);
    std::vector<std::vector<int>> nb(ns);
    for (int i = 0; i < ns; ++i) nb[i] = lat.neighbors(i);
    const double escale = lat.J > 0 ? lat.J : 1.0;
    for (int sweep = 0; sweep < o.max_sweeps; ++sweep) {
        double de = 0.0, dfmax = 0.0;
        for (int i = 0; i < ns; ++i) {
            double field = 0.0;
            for (int j : nb[i]) field += phi[j];
            const double before = onsite(lat, i, f[i]) - 2.0 * lat.J * field * phi[i];
            auto g = site_ground(lat, i, field, n_max);
            const double after = onsite(lat, i, g) - 2.0 * lat.J * field * expect_b(g);
            for (int n = 0; n <= n_max; ++n) dfmax = std::max(dfmax, std::abs(g[n] - f[i][n]));
            de = std::max(de, std::abs(after - before));
            f[i] = std::move(g);
            phi[i] = expect_b(f[i]);
        }
        r.history.push_back(gutzwiller_energy(lat, f));
        r.sweeps = sweep + 1;
        if (de < o.energy_tol * escale && dfmax < o.amplitude_tol) {
            r.converged = true;
            break;
        }
    }
    r.f = std::move(f);
    return r;
}

}  // namespace

double gutzwiller_energy(const BoseHubbardLattice& lat, const std::vector<std::vector<double>>& f) {
    const int ns = lat.sites();
    std::vector<double> phi(ns);
    double e = 0.0;
    for (int i = 0; i < ns; ++i) {
        phi[i] = expect_b(f[i]);
        e += onsite(lat, i, f[i]);
    }
    double hop = 0.0;
    for (int i = 0; i < ns; ++i)
        for (int j : lat.neighbors(i)) hop += phi[i] * phi[j];  // each bond counted twice = b*b + c.c.
    return e - lat.J * hop;
}

GutzwillerState gutzwiller_minimize(const BoseHubbardLattice& lat, int n_max, std::uint64_t seed,
                                    const GutzwillerOptions& opt) {
    lat.validate();
    if (n_max < 1) throw ValidationError("gutzwiller_minimize: n_max must be >= 1");
    const int ns = lat.sites();
    std::vector<std::vector<std::vector<double>>> starts;
    {
        std::vector<std::vector<double>> f(ns);
        for (int i = 0; i < ns; ++i) f[i] = site_ground(lat, i, 0.0, n_max);
        starts.push_back(std::move(f));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<std::vector<double>> f(ns, std::vector<double>(n_max + 1));
        for (auto& site : f) {
            double norm = 0.0;
            for (auto& v : site) {
                v = u(rng);
                norm += v * v;
            }
            for (auto& v : site) v /= std::sqrt(norm);
        }
        starts.push_back(std::move(f));
    }
    GutzwillerState best;
    bool have = false;
    const double escale = lat.J > 0 ? lat.J : 1.0;
    for (auto& s : starts) {
        Run r = relax(lat, std::move(s), n_max, opt);
        GutzwillerState st;
        st.lx = lat.lx;
        st.ly = lat.ly;
        st.n_max = n_max;
        st.f = std::move(r.f);
        st.energy = gutzwiller_energy(lat, st.f);
        st.energy_history = std::move(r.history);
        st.sweeps = r.sweeps;
        st.converged = r.converged;
        bool take = !have;
        if (have) {
            const double diff = st.energy - best.energy;
            if (diff < -1e-9 * escale) take = true;
            else if (std::abs(diff) <= 1e-9 * escale && st.total_particles() < best.total_particles() - 1e-9)
                take = true;
        }
        if (take) {
            best = std::move(st);
            have = true;
        }
    }
    return best;
}

double GutzwillerState::density(int i) const {
    double s = 0.0;
    for (std::size_t n = 0; n < f[i].size(); ++n) s += n * f[i][n] * f[i][n];
    return s;
}

double GutzwillerState::order_parameter(int i) const { return expect_b(f[i]); }

double GutzwillerState::variance(int i) const {
    double s2 = 0.0;
    for (std::size_t n = 0; n < f[i].size(); ++n) s2 += double(n) * n * f[i][n] * f[i][n];
    const double m = density(i);
    return std::max(0.0, s2 - m * m);
}

double GutzwillerState::total_particles() const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += density(static_cast<int>(i));
    return s;
}

double GutzwillerState::max_norm_error() const {
    double e = 0.0;
    for (const auto& site : f) {
        double n = 0.0;
        for (double v : site) n += v * v;
        e = std::max(e, std::abs(n - 1.0));
    }
    return e;
}

std::vector<MottLabel> phase_classify(const GutzwillerState& s, double tol) {
    std::vector<MottLabel> out;
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        const int idx = static_cast<int>(i);
        const double rho = s.density(idx);
        const int n = static_cast<int>(std::lround(rho));
        const bool mott = std::abs(s.order_parameter(idx)) < tol && std::abs(rho - n) < tol;
        out.push_back({mott, mott ? n : 0});
    }
    return out;
}

LoadingDiagnostics loading_diagnostics(const BoseHubbardLattice& lat, const GutzwillerState& s) {
    LoadingDiagnostics d{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0, 0.0};
    const auto labels = phase_classify(s);
    for (int i = 0; i < lat.sites(); ++i) {
        d.max_variance = std::max(d.max_variance, s.variance(i));
        d.max_order_parameter = std::max(d.max_order_parameter, std::abs(s.order_parameter(i)));
        if (labels[i].mott) {
            const double m = lat.mu - lat.offset(i);
            const int n = labels[i].n;
            double gap = lat.U * n - m;  // add a particle
            if (n > 0) gap = std::min(gap, m - lat.U * (n - 1));  // remove one
            d.min_charge_gap = std::min(d.min_charge_gap, gap);
        }
        for (int j : lat.neighbors(i)) {
            const double step = std::abs(lat.offset(i) - lat.offset(j));
            if (step > 0 && std::lround(s.density(i)) != std::lround(s.density(j)))
                d.min_offset_step = std::min(d.min_offset_step, step);
        }
    }
    return d;
}

std::string gutzwiller_csv(const GutzwillerState& s, const std::vector<MottLabel>& labels) {
    std::ostringstream os;
    os << "x,y,density,order_parameter,variance,label\n";
    for (int y = 0; y < s.ly; ++y)
        for (int x = 0; x < s.lx; ++x) {
            const int i = y * s.lx + x;
            os << x << ',' << y << ',' << num::format_double(s.density(i)) << ','
               << num::format_double(s.order_parameter(i)) << ',' << num::format_double(s.variance(i)) << ','
               << labels[i].str() << '\n';
        }
    return os.str();
}

}  // namespace coldgate
