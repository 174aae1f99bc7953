#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coldgate/acceptance.hpp"
#include "coldgate/config.hpp"
#include "coldgate/errors.hpp"
#include "coldgate/gate_fidelity.hpp"
#include "coldgate/lattice_qc.hpp"
#include "coldgate/mott_loading.hpp"
#include "coldgate/moving_gate.hpp"
#include "coldgate/scenarios.hpp"
#include "coldgate/switching_gate.hpp"

namespace py = pybind11;
using namespace coldgate;

PYBIND11_MODULE(_coldgate, m) {
    m.doc() = "Cold-atom gate simulations and lattice quantum-computing primitives";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    (void)validation;

    // ---- moving traps
    py::class_<Trajectory>(m, "Trajectory")
        .def_static("stationary", &Trajectory::stationary, py::arg("center"), py::arg("tau"))
        .def_static("linear", &Trajectory::linear, py::arg("velocity"), py::arg("tau"))
        .def_static("sin2_round_trip", &Trajectory::sin2_round_trip, py::arg("distance"), py::arg("tau"))
        .def_static("quartic_bump", &Trajectory::quartic_bump, py::arg("amplitude"), py::arg("tau"))
        .def_static("gaussian_bump", &Trajectory::gaussian_bump, py::arg("amplitude"), py::arg("sigma"),
                    py::arg("tau"))
        .def_static("sampled", &Trajectory::sampled, py::arg("times"), py::arg("positions"),
                    py::arg("frequencies") = std::vector<double>{})
        .def("position", &Trajectory::position)
        .def("derivative", &Trajectory::derivative)
        .def("shifted", &Trajectory::shifted)
        .def("offset", &Trajectory::offset)
        .def("is_round_trip", &Trajectory::is_round_trip, py::arg("tol") = 1e-9)
        .def_property_readonly("t_begin", &Trajectory::t_begin)
        .def_property_readonly("t_end", &Trajectory::t_end);

    m.def("kinetic_phase", &kinetic_phase, py::arg("trajectory"), py::arg("exact") = true);
    m.def(
        "coherent_amplitude",
        [](const Trajectory& t) { return evolve_coherent(t, t.t_end()).K; },
        py::arg("trajectory"), "K at the end of the trajectory; the final state is coherent with |alpha| = |K|.");
    m.def(
        "excited_population",
        [](const Trajectory& t) { return adiabaticity_residual(t).excited_population; }, py::arg("trajectory"));
    m.def(
        "collisional_phase",
        [](const Trajectory& a, const Trajectory& b, double a_s, bool same_state) {
            return collisional_phase(a, b, a_s, same_state, {}).phase;
        },
        py::arg("first"), py::arg("second"), py::arg("a_s"), py::arg("same_state") = false);

    // ---- switching gate
    py::class_<SwitchingConfig>(m, "SwitchingConfig")
        .def(py::init<>())
        .def_static("rb87_benchmark", &SwitchingConfig::rb87_benchmark)
        .def_readwrite("omega0", &SwitchingConfig::omega0)
        .def_readwrite("omega", &SwitchingConfig::omega)
        .def_readwrite("omega_y", &SwitchingConfig::omega_y)
        .def_readwrite("omega_z", &SwitchingConfig::omega_z)
        .def_readwrite("x0", &SwitchingConfig::x0)
        .def_readwrite("a_bb", &SwitchingConfig::a_bb)
        .def_readwrite("a_ab", &SwitchingConfig::a_ab)
        .def_readwrite("tau", &SwitchingConfig::tau)
        .def("period", &SwitchingConfig::period)
        .def("validate", &SwitchingConfig::validate);

    m.def("cm_overlap", &cm_overlap_analytic, py::arg("omega0"), py::arg("omega"), py::arg("t"));
    m.def(
        "perturbative_phase_per_period",
        [](const SwitchingConfig& c) {
            const auto p = phase_per_period_perturbative(c);
            return py::dict(py::arg("saddle_point") = p.saddle_point, py::arg("quadrature") = p.quadrature);
        },
        py::arg("config"));
    m.def(
        "switching_gate",
        [](const SwitchingConfig& c, int periods, int points, double g_scale) {
            GridOptions o;
            o.points = points;
            o.g_scale = g_scale;
            NetPhase r;
            {
                py::gil_scoped_release release;
                r = net_phase_gate(c, periods, SwitchingVariant::transverse_displacement, o);
            }
            return py::dict(py::arg("phi_bb") = r.phi_bb, py::arg("tau") = r.tau, py::arg("delta_T") = r.delta_T,
                            py::arg("revival_overlap") = r.revival_overlap, py::arg("net_phase") = r.net_phase);
        },
        py::arg("config"), py::arg("periods") = 7, py::arg("points") = 512, py::arg("g_scale") = 1.0);

    // ---- fidelity
    m.def(
        "thermal_occupations", [](double omega, double kT) { return thermal_state(omega, kT).p; }, py::arg("omega"),
        py::arg("kT"));
    m.def(
        "phase_gate_fidelity",
        [](const std::array<cplx, 4>& ideal, const std::array<cplx, 4>& actual) {
            GateChannel ch = ideal_channel(ideal);
            ch.amplitude = [actual](int, int) { return actual; };
            ch.symmetrized_amplitude = ch.amplitude;
            return min_fidelity(ch, thermal_state(1.0, 0.0), false).fidelity;
        },
        py::arg("ideal"), py::arg("actual"), "Worst-case fidelity of a diagonal two-qubit gate.");

    // ---- Mott loading
    m.def(
        "mott_loading",
        [](int lx, int ly, double J, double U, double mu, double amplitude, double period, int n_max,
           std::uint64_t seed) {
            const auto lat = BoseHubbardLattice::with_superlattice(lx, ly, J, U, mu, amplitude, period);
            GutzwillerState s;
            {
                py::gil_scoped_release release;
                s = gutzwiller_minimize(lat, n_max, seed);
            }
            std::vector<double> rho, psi;
            for (int i = 0; i < lat.sites(); ++i) {
                rho.push_back(s.density(i));
                psi.push_back(s.order_parameter(i));
            }
            std::vector<std::string> labels;
            for (const auto& l : phase_classify(s)) labels.push_back(l.str());
            return py::dict(py::arg("density") = rho, py::arg("order_parameter") = psi, py::arg("labels") = labels,
                            py::arg("energy") = s.energy, py::arg("converged") = s.converged,
                            py::arg("sweeps") = s.sweeps);
        },
        py::arg("lx") = 18, py::arg("ly") = 18, py::arg("J") = 1.0, py::arg("U") = 30.0, py::arg("mu") = 15.0,
        py::arg("amplitude") = 40.0, py::arg("period") = 9.0, py::arg("n_max") = 6, py::arg("seed") = 1);

    // ---- lattice quantum computing
    py::class_<LatticeRegister>(m, "LatticeRegister")
        .def(py::init<int, int>(), py::arg("lx"), py::arg("ly") = 1)
        .def_property_readonly("state", &LatticeRegister::state)
        .def("set_state", &LatticeRegister::set_state)
        .def("reset", &LatticeRegister::reset, py::arg("digits") = std::vector<int>{})
        .def("excitation", &LatticeRegister::excitation)
        .def("norm", &LatticeRegister::norm)
        .def("to_json", &LatticeRegister::to_json)
        .def(
            "h", [](LatticeRegister& r, int s) { single_qubit(r, s, Gate::H); }, py::arg("site"))
        .def(
            "x", [](LatticeRegister& r, int s) { single_qubit(r, s, Gate::X); }, py::arg("site"))
        .def(
            "z", [](LatticeRegister& r, int s) { single_qubit(r, s, Gate::Z); }, py::arg("site"))
        .def(
            "lx_shift", [](LatticeRegister& r, double phi) { apply_lx(r, phi); }, py::arg("phi"))
        .def(
            "ly_shift", [](LatticeRegister& r, double phi) { apply_ly(r, phi); }, py::arg("phi"))
        .def(
            "ramsey", [](LatticeRegister& r, double phi) { ramsey_sequence(r, phi); }, py::arg("phi"));

    m.def("shor_codeword", &shor_codeword, py::arg("bit"));
    m.def(
        "syndrome_table",
        [](cplx alpha, cplx beta, double lx_phase) {
            py::list out;
            for (const auto& r : syndrome_table(alpha, beta, lx_phase))
                out.append(py::dict(py::arg("error") = r.error.name(), py::arg("syndrome") = r.syndrome_string(),
                                    py::arg("residual") = residual_name(r.residual),
                                    py::arg("residual_fidelity") = r.residual_fidelity));
            return out;
        },
        py::arg("alpha") = cplx(0.6, 0.0), py::arg("beta") = cplx(0.0, 0.8), py::arg("lx_phase") = kPi);
    m.def(
        "ghz_fidelity",
        [](int n, double phi) { return ghz_fidelity(ghz_standard_form(sweep_product(n, std::vector<double>(n, phi)))); },
        py::arg("n"), py::arg("phi") = kPi);
    m.def(
        "sweep_qft",
        [](const std::vector<int>& bits) {
            const auto q = sweep_qft(bits);
            const auto want = dft_target(bits);
            std::size_t a = 0;
            for (int b : bits) a = 2 * a + b;
            std::vector<cplx> target(q.reg.state().begin() + a * want.size(),
                                     q.reg.state().begin() + (a + 1) * want.size());
            return py::dict(py::arg("target") = target, py::arg("expected") = want);
        },
        py::arg("source_bits"));
    m.def(
        "ft_cnot_logical",
        [](bool sign_free) {
            const auto lm = ft_cnot_logical(sign_free ? ClosingPulse::sign_free : ClosingPulse::hadamard);
            std::vector<std::vector<cplx>> rows;
            for (const auto& r : lm.m) rows.emplace_back(r.begin(), r.end());
            return rows;
        },
        py::arg("sign_free") = true, "Logical map m[out][in] over |block1 block2>.");

    // ---- scenarios and acceptance
    m.def("scenario_names", &scenario_names);
    m.def(
        "run_scenario",
        [](const std::string& name, const std::string& config, const std::string& out_dir, std::uint64_t seed,
           int jobs) {
            Config c = Config::parse(config);
            return run_scenario(name, c, {out_dir, seed, jobs});
        },
        py::arg("name"), py::arg("config") = "", py::arg("out_dir") = ".", py::arg("seed") = 1, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_acceptance",
        [](const std::vector<std::string>& only, bool self_tests) {
            AcceptanceOptions o;
            o.only = only;
            o.self_tests = self_tests;
            std::vector<CriterionResult> res;
            {
                py::gil_scoped_release release;
                res = run_acceptance(o);
            }
            py::list out;
            for (const auto& r : res)
                out.append(py::dict(py::arg("id") = r.id, py::arg("pass") = r.pass, py::arg("detail") = r.detail));
            return out;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("self_tests") = false);
}
