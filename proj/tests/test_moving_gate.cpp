#include <doctest.h>

#include <cmath>

#include "coldgate/errors.hpp"
#include "coldgate/moving_gate.hpp"
#include "coldgate/switching_gate.hpp"

using namespace coldgate;

TEST_CASE("stationary trap leaves the ground state alone") {
    const auto ev = evolve_coherent(Trajectory::stationary(0.0, 3.0), 3.0);
    CHECK(std::abs(ev.K) < 1e-14);
    CHECK(std::abs(ev.amplitude(0)) == doctest::Approx(1.0));
    CHECK(ev.excited_population() < 1e-14);
    CHECK_THROWS_AS(evolve_coherent(Trajectory::stationary(0.0, 3.0), 4.0), ValidationError);
}

TEST_CASE("coherent amplitudes are normalized") {
    const auto ev = evolve_coherent(Trajectory::linear(0.7, 2.0), 2.0);
    double p = 0.0;
    for (int n = 0; n < 60; ++n) p += std::norm(ev.amplitude(n));
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(1.0 - std::norm(ev.amplitude(0)) == doctest::Approx(ev.excited_population()).epsilon(1e-12));
}

TEST_CASE("coherent solution matches split-step propagation") {
    const auto tr = Trajectory::sin2_round_trip(2.0, 4.0);
    const auto g = propagate_moving_trap(tr, 256, 16.0, 8000);
    const auto ev = evolve_coherent(tr, tr.t_end());
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.x.size(); ++j) s += std::conj(ev.wavefunction(g.x[j])) * g.psi[j];
    CHECK(std::norm(s * g.dx) > 1 - 1e-6);
}

TEST_CASE("adiabaticity residual predicts the ground-state loss") {
    for (double tau : {1.5, 3.0, 8.0}) {
        const auto tr = Trajectory::sin2_round_trip(2.0, tau);
        const auto r = adiabaticity_residual(tr);
        CHECK(r.excited_population == doctest::Approx(1.0 - std::exp(-r.residual * r.residual / 2)).epsilon(1e-9));
    }
    // slower transport excites less
    CHECK(adiabaticity_residual(Trajectory::quartic_bump(1.0, 20.0)).excited_population <
          adiabaticity_residual(Trajectory::quartic_bump(1.0, 3.0)).excited_population);
}

TEST_CASE("kinetic phase: exact approaches the adiabatic integral for slow transport") {
    // duration 2 tau = 2 n pi, where the leading correction is third order
    double prev = 1.0;
    for (int n : {5, 10, 20}) {
        const double tau = n * kPi;
        const auto tr = Trajectory::sin2_round_trip(1.0, tau);
        const double ex = kinetic_phase(tr, true), ap = kinetic_phase(tr, false);
        CHECK(ap == doctest::Approx(kPi * kPi / (8.0 * tau)).epsilon(1e-9));
        // leading correction: (1/2) int xbar''^2 = pi^4 d^2 / (8 tau^3)
        const double corr = std::pow(kPi, 4) / (8.0 * tau * tau * tau);
        CHECK(ex - ap == doctest::Approx(corr).epsilon(1e-2));
        CHECK(ex - ap < prev);
        prev = ex - ap;
    }
}

TEST_CASE("exact kinetic phase ignores time translation") {
    const auto tr = Trajectory::quartic_bump(1.0, 6.0);
    CHECK(kinetic_phase(tr.shifted(3.7), true) == doctest::Approx(kinetic_phase(tr, true)).epsilon(1e-10));
    CHECK(kinetic_phase(tr.offset(2.0).offset(-2.0), true) == doctest::Approx(kinetic_phase(tr, true)).epsilon(1e-10));
}

TEST_CASE("derivative expansion sums back to K") {
    const auto tr = Trajectory::gaussian_bump(1.5, 2.0, 16.0);
    const auto ev = evolve_coherent(tr, tr.t_end());
    for (int order : {0, 2, 4}) {
        const auto ex = correction_terms(tr, order);
        CHECK(std::abs(ex.truncated + ex.remainder - ev.K) < 1e-8);
    }
    CHECK_THROWS_AS(correction_terms(tr, -1), ValidationError);
    // closed fourth-order form for a slow symmetric round trip
    const auto slow = Trajectory::sin2_round_trip(1.0, 10 * kPi);
    const auto k = correction_terms(slow, 4);
    CHECK(std::abs(k.fourth_order - evolve_coherent(slow, slow.t_end()).K) < 1e-12);
    CHECK_FALSE(k.hierarchy_violated);
    // away from t + tau = 2 n pi the residual excitation is the second-derivative term
    const auto odd = Trajectory::sin2_round_trip(1.0, 10 * kPi + 1.0);
    const cplx K = evolve_coherent(odd, odd.t_end()).K;
    CHECK(std::abs(K) > 1e-4);
    CHECK(std::abs(correction_terms(odd, 4).fourth_order - K) < 1e-3 * std::abs(K));
}

TEST_CASE("Gaussian overlap energies") {
    const GaussianGeometry g{1.0, 1.0};
    CHECK(gaussian_overlap(0.3, 1.0, 0.3, 1.0) == doctest::Approx(1.0));
    CHECK(overlap_energy_distinct(0.01, 0, 1, 0, 1, g) == doctest::Approx(std::sqrt(2 / kPi) * 0.01));
    // far apart, exchange doubles the density overlap term
    const double far_same = overlap_energy_same(0.01, 0, 1, 8, 1, g);
    const double far_dist = overlap_energy_distinct(0.01, 0, 1, 8, 1, g);
    CHECK(far_same == doctest::Approx(2 * far_dist).epsilon(1e-10));
}

TEST_CASE("collisional phase of two coinciding stationary wells") {
    const auto t = Trajectory::stationary(0.0, 5.0);
    const auto r = collisional_phase(t, t, 0.01, false, {});
    CHECK(r.phase == doctest::Approx(10.0 * std::sqrt(2 / kPi) * 0.01).epsilon(1e-9));
    CHECK(r.warnings.empty());
    CHECK_THROWS_AS(collisional_phase(t, t, 1.0, false, {}), PerturbationInvalid);
    CHECK(collisional_phase(t, t.offset(30.0), 0.01, false, {}).phase < 1e-12);
}

TEST_CASE("gate map absorbs one-particle phases") {
    GatePhases p;
    p.phi_a = 0.3;
    p.phi_b = -0.2;
    p.phi_ab = kPi;
    const auto m = gate_map(p);
    CHECK(std::abs(m.reduced[1] + 1.0) < 1e-12);
    CHECK(std::abs(m.reduced[0] - 1.0) < 1e-12);
    CHECK(std::abs(m.full[1] - std::exp(cplx(0, -(0.1 + kPi)))) < 1e-12);
}

TEST_CASE("lattice sweep collides a with b only") {
    const auto cfg = lattice_benchmark();
    const auto sw = lattice_sweep(cfg, 100.0);
    CHECK(sw.spacing == doctest::Approx(kPi / cfg.k));
    const auto setup = lattice_setup(sw);
    const double a = lattice_benchmark_scattering_length();
    const auto ph = collisional_phase_perturbative(setup, {a, a, a}, {});
    CHECK(ph.phi_ab > 1.0);
    CHECK(ph.phi_ba < 1e-6);
    CHECK(ph.phi_aa < 1e-6);
    CHECK(ph.phi_bb < 1e-6);
}
