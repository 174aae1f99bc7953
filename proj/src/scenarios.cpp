#include "coldgate/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "coldgate/acceptance.hpp"
#include "coldgate/circuit.hpp"
#include "coldgate/errors.hpp"
#include "coldgate/gate_fidelity.hpp"
#include "coldgate/lattice_qc.hpp"
#include "coldgate/mott_loading.hpp"
#include "coldgate/moving_gate.hpp"
#include "coldgate/switching_gate.hpp"
#include "coldgate/units.hpp"

namespace coldgate {

namespace {

namespace fs = std::filesystem;
using num::format_double;

class Writer {
public:
    Writer(const RunOptions& opt) : dir_(opt.out_dir) { fs::create_directories(dir_); }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + (dir_ / name).string() + "'");
        f << content;
    }

private:
    fs::path dir_;
};

std::string kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string s = "quantity,value\n";
    for (const auto& [k, v] : rows) s += k + "," + v + "\n";
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Runs independent items on up to `jobs` threads; results keep their index order.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& f) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::max(jobs, 1)));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

SwitchingConfig switching_config(Config& c) {
    const double omega_khz = c.number("omega_khz", 23.4);
    const double perp_khz = c.number("omega_perp_khz", 150.0);
    const double ratio = c.number("omega0_ratio", 2.0);
    const double x0 = c.number("x0", 3.0 * std::sqrt(2.0));
    const double a_nm = c.number("a_s_nm", 5.1);
    const double periods = c.integer("periods", 7);
    if (!(omega_khz > 0) || !(perp_khz > 0)) throw ValidationError("trap frequencies must be positive");
    const OscUnits u = OscUnits::from_frequency_hz(omega_khz * 1e3);
    SwitchingConfig s;
    s.omega = 1.0;
    s.omega0 = ratio;
    s.omega_y = s.omega_z = perp_khz / omega_khz;
    s.x0 = x0;
    s.a_bb = s.a_ab = u.length_from_si(a_nm * 1e-9);
    s.tau = periods * s.period();
    return s;
}

GridOptions grid_options(Config& c) {
    GridOptions o;
    o.points = c.integer("points", o.points);
    o.extent = c.number("extent", o.extent);
    o.steps_per_period = c.integer("steps_per_period", 0);
    const std::string contact = c.text("contact", "grid_point");
    if (contact == "grid_point") o.contact = ContactModel::grid_point;
    else if (contact == "gaussian") o.contact = ContactModel::gaussian;
    else throw ValidationError("contact must be grid_point or gaussian");
    o.g_scale = c.number("g_scale", 1.0);
    o.check_convergence = c.flag("check_convergence", true);
    return o;
}

struct LatticeModel {
    LatticeBeamConfig beams;
    double tau;
    double a_s;
};

LatticeModel lattice_model(Config& c) {
    const double omega_khz = c.number("omega_khz", 100.0);
    const double spacing_nm = c.number("spacing_nm", 390.0);
    const OscUnits u = OscUnits::from_frequency_hz(omega_khz * 1e3);
    LatticeModel m;
    const double d = u.length_from_si(spacing_nm * 1e-9);
    m.beams.k = kPi / d;
    m.beams.depth = c.number("depth", 1.0 / (2.0 * m.beams.k * m.beams.k));
    m.beams.tau_r = c.number("tau_r", 25.0);
    m.beams.tau_i = c.number("tau_i", 25.0);
    m.tau = c.number("tau", 100.0);
    m.a_s = u.length_from_si(c.number("a_s_nm", 5.1) * 1e-9);
    m.beams.validate();
    return m;
}

std::string state_json(const std::vector<cplx>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : v) j.push_back({a.real(), a.imag()});
    return j.dump();
}

// ---------------------------------------------------------------- scenarios

int gate_moving(Config& c, const RunOptions& opt) {
    const LatticeModel m = lattice_model(c);
    const int samples = c.integer("samples", 2001);
    const int stride = c.integer("stride", 10);
    c.reject_unknown();
    const Writer w(opt);
    w.write("gate-moving.config", c.echo());
    if (stride < 1) throw ValidationError("stride must be >= 1");
    const LatticeSweep sw = lattice_sweep(m.beams, m.tau, samples);
    std::string traj = "t,dx_a,dx_b,omega_a,omega_b\n";
    for (std::size_t k = 0; k < sw.t.size(); k += stride)
        traj += format_double(sw.t[k]) + "," + format_double(sw.dx_a[k]) + "," + format_double(sw.dx_b[k]) + "," +
                format_double(sw.omega_a[k]) + "," + format_double(sw.omega_b[k]) + "\n";
    w.write("gate_moving_trajectory.csv", traj);
    const MovingGateSetup setup = lattice_setup(sw);
    const GatePhases ph = collisional_phase_perturbative(setup, {m.a_s, m.a_s, m.a_s}, {});
    const PhaseTable table = gate_map(ph);
    std::vector<std::pair<std::string, std::string>> rows{
        {"spacing", format_double(sw.spacing)},      {"depth", format_double(m.beams.depth)},
        {"harmonic_valid", sw.valid ? "1" : "0"},    {"phi_a", format_double(ph.phi_a)},
        {"phi_b", format_double(ph.phi_b)},          {"phi_ab", format_double(ph.phi_ab)},
        {"phi_ba", format_double(ph.phi_ba)},        {"phi_aa", format_double(ph.phi_aa)},
        {"phi_bb", format_double(ph.phi_bb)},
    };
    const char* labels[4] = {"aa", "ab", "ba", "bb"};
    for (int i = 0; i < 4; ++i) rows.emplace_back(std::string("reduced_phase_") + labels[i], format_double(std::arg(table.reduced[i])));
    for (std::size_t i = 0; i < ph.warnings.size(); ++i) rows.emplace_back("warning_" + std::to_string(i), "\"" + ph.warnings[i] + "\"");
    w.write("gate_moving_phases.csv", kv_csv(rows));
    return 0;
}

int gate_switching(Config& c, const RunOptions& opt) {
    SwitchingConfig s = switching_config(c);
    GridOptions o = grid_options(c);
    const std::string variant = c.text("variant", "transverse");
    const int stride = c.integer("stride", 20);
    const bool fidelity = c.flag("fidelity", true);
    c.reject_unknown();
    const Writer w(opt);
    w.write("gate-switching.config", c.echo());
    SwitchingVariant v;
    if (variant == "transverse") v = SwitchingVariant::transverse_displacement;
    else if (variant == "collinear") v = SwitchingVariant::collinear;
    else throw ValidationError("variant must be transverse or collinear");
    s.validate();
    const int periods = static_cast<int>(std::lround(s.tau / s.period()));
    const NetPhase r = net_phase_gate(s, periods, v, o);
    const double T = s.period();
    w.write("gate_switching.csv", r.bb.to_csv(T, stride));
    const auto pert = phase_per_period_perturbative(s);
    std::vector<std::pair<std::string, std::string>> rows{
        {"periods", std::to_string(periods)},
        {"g", format_double(r.bb.g)},
        {"tau_over_T", format_double(r.tau / T)},
        {"delta_T_over_T", format_double(r.delta_T / T)},
        {"phi_bb_over_pi", format_double(r.phi_bb / kPi)},
        {"phi_ab_over_pi", format_double(r.phi_ab / kPi)},
        {"net_phase_over_pi", format_double(r.net_phase / kPi)},
        {"revival_overlap", format_double(r.revival_overlap)},
        {"perturbative_closed_form_over_pi", format_double(periods * pert.saddle_point / kPi)},
        {"perturbative_quadrature_over_pi", format_double(periods * pert.quadrature / kPi)},
        {"norm_drift", format_double(r.bb.norm_drift)},
        {"antisymmetric_norm", format_double(r.bb.antisymmetric_norm)},
    };
    if (fidelity) {
        const auto f = switching_fidelity(s, r.bb, periods);
        rows.emplace_back("fidelity_tau0_over_T", format_double(f.tau0 / T));
        rows.emplace_back("fidelity_symmetrized", format_double(f.fidelity));
        rows.emplace_back("fidelity_unsymmetrized", format_double(f.fidelity_unsymmetrized));
        rows.emplace_back("timing_half_width_over_T", format_double(f.timing.half_width / T));
    }
    for (std::size_t i = 0; i < r.bb.warnings.size(); ++i)
        rows.emplace_back("warning_" + std::to_string(i), "\"" + r.bb.warnings[i] + "\"");
    w.write("gate_switching_summary.csv", kv_csv(rows));
    return 0;
}

int mott(Config& c, const RunOptions& opt) {
    const int lx = c.integer("lx", 18), ly = c.integer("ly", 18);
    const double J = c.number("J", 1.0), U = c.number("U", 30.0), mu = c.number("mu", 15.0);
    const double amp = c.number("amplitude", 40.0), period = c.number("period", 9.0);
    const int n_max = c.integer("n_max", 6);
    const std::string bc = c.text("boundary", "periodic");
    GutzwillerOptions go;
    go.restarts = c.integer("restarts", 3);
    go.max_sweeps = c.integer("max_sweeps", go.max_sweeps);
    const double tol = c.number("classify_tol", 1e-3);
    c.reject_unknown();
    const Writer w(opt);
    w.write("mott.config", c.echo());
    Boundary b;
    if (bc == "periodic") b = Boundary::periodic;
    else if (bc == "open") b = Boundary::open;
    else throw ValidationError("boundary must be periodic or open");
    const auto lat = BoseHubbardLattice::with_superlattice(lx, ly, J, U, mu, amp, period, b);
    const auto s = gutzwiller_minimize(lat, n_max, opt.seed, go);
    const auto labels = phase_classify(s, tol);
    w.write("mott_density.csv", gutzwiller_csv(s, labels));
    std::string hist = "sweep,energy\n";
    for (std::size_t k = 0; k < s.energy_history.size(); ++k)
        hist += std::to_string(k + 1) + "," + format_double(s.energy_history[k]) + "\n";
    w.write("mott_energy.csv", hist);
    const auto d = loading_diagnostics(lat, s);
    int mi = 0;
    for (const auto& l : labels) mi += l.mott;
    w.write("mott_summary.csv", kv_csv({{"converged", s.converged ? "1" : "0"},
                                        {"sweeps", std::to_string(s.sweeps)},
                                        {"energy", format_double(s.energy)},
                                        {"particles", format_double(s.total_particles())},
                                        {"mott_sites", std::to_string(mi)},
                                        {"max_variance", format_double(d.max_variance)},
                                        {"max_order_parameter", format_double(d.max_order_parameter)},
                                        {"min_charge_gap", format_double(d.min_charge_gap)},
                                        {"min_offset_step", format_double(d.min_offset_step)}}));
    if (!s.converged) throw ConvergenceError("Gutzwiller minimization did not converge within the sweep budget");
    return 0;
}

int fidelity_curve(Config& c, const RunOptions& opt) {
    const std::string kind = c.text("kind", "moving");
    if (kind == "moving") {
        const LatticeModel m = lattice_model(c);
        const auto kts = c.numbers("kT", {0.0, 0.1, 0.2, 0.4});
        c.reject_unknown();
        const Writer w(opt);
        w.write("fidelity-curve.config", c.echo());
        const auto sw = lattice_sweep(m.beams, m.tau);
        const MovingGateModel model{lattice_setup(sw), {m.a_s, m.a_s, m.a_s}, {}};
        const auto fs = parallel_map<FidelityResult>(kts.size(), opt.jobs, [&](std::size_t i) {
            return min_fidelity(moving_channel(model), thermal_state(1.0, kts[i]), false);
        });
        std::string csv = "kT_over_hbar_omega,fidelity\n";
        for (std::size_t i = 0; i < kts.size(); ++i) csv += format_double(kts[i]) + "," + format_double(fs[i].fidelity) + "\n";
        w.write("fidelity_kT.csv", csv);
        return 0;
    }
    if (kind == "switching") {
        SwitchingConfig s = switching_config(c);
        GridOptions o = grid_options(c);
        const double delta = c.number("delta_over_T", 2e-4);
        const int half = c.integer("half_count", 20);
        c.reject_unknown();
        const Writer w(opt);
        w.write("fidelity-curve.config", c.echo());
        const int periods = static_cast<int>(std::lround(s.tau / s.period()));
        const NetPhase r = net_phase_gate(s, periods, SwitchingVariant::transverse_displacement, o);
        const auto f = switching_fidelity(s, r.bb, periods, delta, half);
        const double T = s.period();
        std::string csv = "offset_over_T,fidelity\n";
        for (std::size_t i = 0; i < f.timing.offsets.size(); ++i)
            csv += format_double(f.timing.offsets[i] / T) + "," + format_double(f.timing.fidelity[i]) + "\n";
        w.write("fidelity_timing.csv", csv);
        w.write("fidelity_timing_summary.csv", kv_csv({{"tau0_over_T", format_double(f.tau0 / T)},
                                                       {"fidelity", format_double(f.fidelity)},
                                                       {"half_width_over_T", format_double(f.timing.half_width / T)}}));
        return 0;
    }
    throw ValidationError("kind must be moving or switching");
}

int qc_ramsey(Config& c, const RunOptions& opt) {
    const double phi = c.number("phi", kPi);
    const auto etas = c.numbers("eta", {0.05, 0.1, 0.2});
    const int sites = c.integer("sites", 1000000);
    const int scan = c.integer("scan_points", 33);
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-ramsey.config", c.echo());
    nlohmann::json states;
    for (int n = 1; n <= 3; ++n) {
        LatticeRegister r(n);
        ramsey_sequence(r, phi);
        states[std::to_string(n)] = nlohmann::json::parse(r.to_json());
    }
    w.write("ramsey_states.json", states.dump() + "\n");
    std::string sc = "phi_over_pi,bright_single,bright_pair,bright_triplet\n";
    for (int k = 0; k < scan; ++k) {
        const double p = scan > 1 ? 2 * kPi * k / (scan - 1) : phi;
        sc += format_double(p / kPi);
        for (int n = 1; n <= 3; ++n) sc += "," + format_double(cluster_bright_count(n, p));
        sc += "\n";
    }
    w.write("ramsey_scan.csv", sc);
    std::string census = "eta,atoms,singles,pairs,triplets,bright_fraction\n";
    std::vector<std::vector<double>> freq(3);
    for (std::size_t k = 0; k < etas.size(); ++k) {
        const auto f = random_fill(sites, 1, etas[k], opt.seed + k);
        auto count = [&](int n) { return f.census.clusters.count(n) ? f.census.clusters.at(n) : 0L; };
        census += format_double(etas[k]) + "," + std::to_string(f.census.atoms) + "," + std::to_string(count(1)) + "," +
                  std::to_string(count(2)) + "," + std::to_string(count(3)) + "," +
                  format_double(bright_fraction(f.census, phi)) + "\n";
        for (int n = 1; n <= 3; ++n) freq[n - 1].push_back(f.census.frequency(n));
    }
    w.write("ramsey_census.csv", census);
    if (etas.size() >= 2) {
        std::string ex = "cluster_size,exponent\n";
        for (int n = 1; n <= 3; ++n) ex += std::to_string(n) + "," + format_double(cluster_exponent(etas, freq[n - 1])) + "\n";
        w.write("ramsey_exponents.csv", ex);
    }
    return 0;
}

int qc_syndrome_table(Config& c, const RunOptions& opt) {
    const cplx alpha(c.number("alpha_re", 0.6), c.number("alpha_im", 0.0));
    const cplx beta(c.number("beta_re", 0.0), c.number("beta_im", 0.8));
    const double phi = c.number("lx_phase", kPi);
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-syndrome-table.config", c.echo());
    const auto rows = syndrome_table(alpha, beta, phi);
    w.write("syndrome_table.csv", syndrome_table_csv(rows));
    nlohmann::json cw;
    cw["zero"] = nlohmann::json::parse(state_json(shor_codeword(0)));
    cw["one"] = nlohmann::json::parse(state_json(shor_codeword(1)));
    w.write("shor_codewords.json", cw.dump() + "\n");
    return 0;
}

int qc_ghz(Config& c, const RunOptions& opt) {
    const int n = c.integer("n", 4);
    const double phi = c.number("phi", kPi);
    const std::string script = c.text("circuit", "");
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-ghz.config", c.echo());
    if (n < 1 || n > 12) throw ValidationError("n must lie in 1..12");
    std::string text = script.empty() ? "" : read_file(script);
    if (text.empty()) {
        std::ostringstream s;
        s << "INIT\nH 1\n";
        for (int j = 2; j <= n + 1; ++j) s << "H " << j << "\n";
        s << "SWEEP";
        for (int j = 0; j < n; ++j) s << " " << format_double(phi);
        s << "\n";
        for (int j = 2; j <= n + 1; ++j) s << "H " << j << "\n";
        text = s.str();
    }
    w.write("ghz_circuit.txt", text);
    const auto ops = parse_circuit(text, n + 1);
    const auto run = run_circuit(ops, n + 1, 1, 0, opt.seed);
    w.write("ghz_state.json", run.reg.to_json() + "\n");
    // Relabel r -> 1 on the selected atom and compare with (|0...0> + |1...1>)/sqrt2.
    const auto& st = run.reg.state();
    const cplx zero = st.front(), all = st[run.reg.dimension() - 1];
    double fidelity = 0.5 * std::norm(zero + all);
    std::string rows = "quantity,value\nn," + std::to_string(n) + "\nphi_over_pi," + format_double(phi / kPi) +
                       "\nghz_fidelity," + format_double(fidelity) + "\n";
    for (std::size_t k = 0; k < run.outcomes.size(); ++k) {
        std::string bits;
        for (int b : run.outcomes[k]) bits += char('0' + b);
        rows += "measurement_" + std::to_string(k + 1) + "," + bits + "\n";
    }
    w.write("ghz_summary.csv", rows);
    return 0;
}

int qc_qft(Config& c, const RunOptions& opt) {
    const int m = c.integer("m", 4);
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-qft.config", c.echo());
    if (m < 1 || m > 10) throw ValidationError("m must lie in 1..10");
    std::string csv = "input,max_error_vs_dft\n";
    std::string sched;
    for (int a = 0; a < (1 << m); ++a) {
        std::vector<int> bits;
        for (int l = m - 1; l >= 0; --l) bits.push_back((a >> l) & 1);
        const auto q = sweep_qft(bits);
        const auto want = dft_target(bits);
        double err = 0.0;
        for (std::size_t t = 0; t < want.size(); ++t) err = std::max(err, std::abs(q.reg.state()[a * want.size() + t] - want[t]));
        std::string s;
        for (int b : bits) s += char('0' + b);
        csv += s + "," + format_double(err) + "\n";
        if (a == 0) {
            sched = "step,source,target,phase_over_pi\n";
            for (const auto& st : q.schedule)
                sched += std::to_string(st.step) + "," + std::to_string(st.source) + "," + std::to_string(st.target) + "," +
                         format_double(st.phase / kPi) + "\n";
        }
    }
    w.write("qft_check.csv", csv);
    w.write("qft_schedule.csv", sched);
    return 0;
}

int qc_ftcnot(Config& c, const RunOptions& opt) {
    const std::string closing = c.text("closing", "sign_free");
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-ftcnot.config", c.echo());
    ClosingPulse cp;
    if (closing == "sign_free") cp = ClosingPulse::sign_free;
    else if (closing == "hadamard") cp = ClosingPulse::hadamard;
    else throw ValidationError("closing must be sign_free or hadamard");
    const auto lm = ft_cnot_logical(cp);
    const char* names[4] = {"00", "01", "10", "11"};
    std::string csv = "input,output,re,im\n";
    for (int in = 0; in < 4; ++in)
        for (int o = 0; o < 4; ++o) {
            const cplx v = lm.m[o][in];
            const double re = std::abs(v.real()) < 1e-13 ? 0.0 : v.real(), im = std::abs(v.imag()) < 1e-13 ? 0.0 : v.imag();
            csv += std::string(names[in]) + "," + names[o] + "," + format_double(re) + "," + format_double(im) + "\n";
        }
    w.write("ftcnot_logical.csv", csv);
    w.write("ftcnot_summary.csv", kv_csv({{"leakage", format_double(lm.leakage)}}));
    return 0;
}

int qc_armada(Config& c, const RunOptions& opt) {
    const std::string kind = c.text("kind", "spin_flip");
    const std::string error = c.text("error", "x1");
    const cplx alpha(c.number("alpha_re", 0.6), c.number("alpha_im", 0.0));
    const cplx beta(c.number("beta_re", 0.0), c.number("beta_im", 0.8));
    const std::string words = c.text("codewords", "standard");
    c.reject_unknown();
    const Writer w(opt);
    w.write("qc-armada.config", c.echo());
    ParityKind k;
    if (kind == "spin_flip") k = ParityKind::spin_flip;
    else if (kind == "phase_flip") k = ParityKind::phase_flip;
    else throw ValidationError("kind must be spin_flip or phase_flip");
    PauliError e;
    if (error != "none") {
        if (error.size() != 2 || std::string("xyz").find(error[0]) == std::string::npos || error[1] < '1' || error[1] > '9')
            throw ValidationError("error must be none or <x|y|z><1..9>");
        e = {error[0], error[1] - '0'};
    }
    LatticeRegister blk(3, 3);
    if (words == "encoded") {
        blk = shor_bare(alpha, beta);
        shor_encode(blk);
    } else if (words == "standard") {
        const auto z = standard_shor_codeword(0), o = standard_shor_codeword(1);
        const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        std::vector<cplx> s(512);
        for (int i = 0; i < 512; ++i) s[i] = (alpha * z[i] + beta * o[i]) / n;
        blk.set_state(s);
    } else {
        throw ValidationError("codewords must be encoded or standard");
    }
    apply_pauli(blk, e);
    std::string csv = "check,pair,parities,ancilla_bits,block_fidelity\n";
    const std::array<std::array<int, 2>, 2> pairs{{{0, 1}, {1, 2}}};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto out = armada_parity_check(blk.state(), k, pairs[p], opt.seed + p);
        std::string par, anc;
        for (int b : out.parities) par += char('0' + b);
        for (int b : out.ancilla_bits) anc += char('0' + b);
        csv += kind + "," + std::to_string(pairs[p][0]) + std::to_string(pairs[p][1]) + "," + par + "," + anc + "," +
               format_double(out.block_fidelity) + "\n";
    }
    w.write("armada.csv", csv);
    return 0;
}

int accept(Config& c, const RunOptions& opt) {
    AcceptanceOptions a;
    a.seed = opt.seed;
    a.lx_phase = c.number("lx_phase", kPi);
    a.g_scale = c.number("g_scale", 1.0);
    a.self_tests = c.flag("self_tests", true);
    const std::string only = c.text("only", "");
    c.reject_unknown();
    std::istringstream in(only);
    for (std::string id; std::getline(in, id, ',');)
        if (!id.empty()) a.only.push_back(id);
    const Writer w(opt);
    w.write("accept.config", c.echo());
    const auto results = run_acceptance(a);
    w.write("accept.json", acceptance_json(results));
    const std::string summary = acceptance_summary(results);
    w.write("accept_summary.txt", summary);
    std::fputs(summary.c_str(), stdout);
    return all_passed(results) ? 0 : 1;
}

const std::map<std::string, std::function<int(Config&, const RunOptions&)>>& table() {
    static const std::map<std::string, std::function<int(Config&, const RunOptions&)>> t{
        {"gate-moving", gate_moving},     {"gate-switching", gate_switching},
        {"mott", mott},                   {"fidelity-curve", fidelity_curve},
        {"qc-ramsey", qc_ramsey},         {"qc-syndrome-table", qc_syndrome_table},
        {"qc-ghz", qc_ghz},               {"qc-qft", qc_qft},
        {"qc-ftcnot", qc_ftcnot},         {"qc-armada", qc_armada},
        {"accept", accept},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : table()) n.push_back(k);
        return n;
    }();
    return names;
}

int run_scenario(const std::string& name, Config& cfg, const RunOptions& opt) {
    const auto& t = table();
    auto it = t.find(name);
    if (it == t.end()) throw ValidationError("unknown scenario '" + name + "'");
    if (opt.jobs < 1) throw ValidationError("--jobs must be >= 1");
    // A seed in the config (for instance an echoed one) is used unless the caller set it.
    RunOptions o = opt;
    o.seed = cfg.unsigned_integer("seed", opt.seed);
    return it->second(cfg, o);
}

}  // namespace coldgate
