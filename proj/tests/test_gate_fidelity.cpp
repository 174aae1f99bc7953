#include <doctest.h>

#include <cmath>
#include <random>

#include "coldgate/errors.hpp"
#include "coldgate/gate_fidelity.hpp"
#include "coldgate/moving_gate.hpp"

using namespace coldgate;

TEST_CASE("thermal state weights") {
    const auto g = thermal_state(1.0, 0.0);
    CHECK(g.n_max == 0);
    CHECK(g.p[0] == doctest::Approx(1.0));
    for (double kT : {0.1, 0.5, 2.0}) {
        const auto s = thermal_state(1.0, kT);
        double sum = 0.0;
        for (double p : s.p) sum += p;
        CHECK(s.tail < 1e-13);
        CHECK(sum + s.tail == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.p[1] / s.p[0] == doctest::Approx(std::exp(-1.0 / kT)));
    }
    CHECK_THROWS_AS(thermal_state(1.0, -0.1), ValidationError);
}

TEST_CASE("ideal gate has unit fidelity") {
    const auto ch = ideal_channel({1.0, 1.0, 1.0, -1.0});
    const auto r = min_fidelity(ch, thermal_state(1.0, 0.5), false);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.spread <= 1e-6);
}

TEST_CASE("wrong phase: minimum sits below every sampled state") {
    // Off by 0.5 rad on |bb>: worst case mixes |bb> with the rest half and half.
    GateChannel ch = ideal_channel({1.0, 1.0, 1.0, -1.0});
    const std::array<cplx, 4> actual{1.0, 1.0, 1.0, -std::exp(cplx(0, 0.5))};
    ch.amplitude = [actual](int, int) { return actual; };
    ch.symmetrized_amplitude = ch.amplitude;
    const auto rho = thermal_state(1.0, 0.0);
    const auto r = min_fidelity(ch, rho, false);
    CHECK(r.fidelity == doctest::Approx(std::pow(std::cos(0.25), 2)).epsilon(1e-8));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    for (int k = 0; k < 20; ++k) {
        InternalState s;
        for (auto& a : s) a = cplx(n(rng), n(rng));
        CHECK(fidelity_at(ch, rho, false, s) >= r.fidelity - 1e-12);
    }
}

TEST_CASE("moving-gate fidelity decreases with temperature") {
    const auto sw = lattice_sweep(lattice_benchmark(), 100.0);
    const double a = lattice_benchmark_scattering_length();
    const auto ch = moving_channel({lattice_setup(sw), {a, a, a}, {}});
    const double f0 = min_fidelity(ch, thermal_state(1.0, 0.0), false).fidelity;
    const double f2 = min_fidelity(ch, thermal_state(1.0, 0.2), false).fidelity;
    CHECK(f0 > 0.999);
    CHECK(f2 < f0);
    // extra levels beyond the automatic truncation do not move F
    const auto auto_rho = thermal_state(1.0, 0.2);
    const double f2_more = min_fidelity(ch, thermal_state(1.0, 0.2, auto_rho.n_max + 5), false).fidelity;
    CHECK(std::abs(f2_more - f2) < 1e-8);
}

TEST_CASE("level collision phase reduces to the ground-state overlap") {
    const auto t = Trajectory::stationary(0.0, 5.0);
    const double p00 = level_collision_phase(t, t, 0, 0, 0.01, {});
    CHECK(p00 == doctest::Approx(collisional_phase(t, t, 0.01, false, {}).phase).epsilon(1e-6));
    // excited levels spread out, so the contact overlap drops
    CHECK(level_collision_phase(t, t, 1, 0, 0.01, {}) < p00);
}

TEST_CASE("timing curve half width") {
    // Phase error grows linearly with the offset.
    auto factory = [](double tau) {
        GateChannel ch = ideal_channel({1.0, 1.0, 1.0, -1.0});
        const std::array<cplx, 4> actual{1.0, 1.0, 1.0, -std::exp(cplx(0, tau))};
        ch.amplitude = [actual](int, int) { return actual; };
        ch.symmetrized_amplitude = ch.amplitude;
        return ch;
    };
    const auto c = timing_sensitivity(factory, 0.0, 0.02, 15, thermal_state(1.0, 0.0), false);
    // worst case cos^2(x/2) = 0.99 at x = 2 acos(sqrt(0.99))
    CHECK(c.half_width == doctest::Approx(2 * std::acos(std::sqrt(0.99))).epsilon(0.02));
    const auto flat = timing_sensitivity(factory, 0.0, 1e-4, 3, thermal_state(1.0, 0.0), false);
    CHECK(std::isnan(flat.half_width));
}
