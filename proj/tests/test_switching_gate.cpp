#include <doctest.h>

#include <cmath>

#include "coldgate/errors.hpp"
#include "coldgate/switching_gate.hpp"

using namespace coldgate;

TEST_CASE("analytic CM overlap") {
    CHECK(cm_overlap_analytic(2.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(cm_overlap_analytic(2.0, 1.0, kPi / 2) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(cm_overlap_analytic(2.0, 1.0, kPi) == doctest::Approx(1.0));
    for (double t : {0.3, 1.1, 2.9})
        CHECK(std::norm(cm_amplitude_analytic(2.0, 1.0, t)) == doctest::Approx(cm_overlap_analytic(2.0, 1.0, t)));
}

TEST_CASE("perturbative phase per period") {
    const auto c = SwitchingConfig::rb87_benchmark();
    const auto p = phase_per_period_perturbative(c);
    CHECK(p.saddle_point > 0.0);
    CHECK(p.quadrature == doctest::Approx(p.saddle_point).epsilon(0.02));
    CHECK(energy_shift_bb(c, 0.0) < energy_shift_bb(c, kPi / 2));
    // linear in the scattering length
    auto c2 = c;
    c2.a_bb *= 2;
    CHECK(phase_per_period_perturbative(c2).quadrature == doctest::Approx(2 * p.quadrature));
}

TEST_CASE("grid CM overlap agrees with the closed form") {
    const auto c = SwitchingConfig::rb87_benchmark();
    GridOptions o;
    o.points = 256;
    const std::vector<double> times{1.0, kPi / 2, 5.0, 9.0};
    const auto g = cm_overlap_grid(c, times, o);
    for (std::size_t k = 0; k < times.size(); ++k)
        CHECK(g[k] == doctest::Approx(cm_overlap_analytic(2.0, 1.0, times[k])).epsilon(1e-6));
}

TEST_CASE("noninteracting bb channel picks up no phase") {
    auto c = SwitchingConfig::rb87_benchmark();
    c.a_bb = 0.0;
    GridOptions o;
    o.points = 256;
    const auto s = propagate(c, Channel::bb, c.period(), o);
    CHECK(std::abs(s.phase.back()) < 1e-8);
    CHECK(s.norm_drift < 1e-10);
}

TEST_CASE("small interacting run: phase grows with g and is reproducible") {
    const auto c = SwitchingConfig::rb87_benchmark();
    GridOptions o;
    o.points = 256;
    const auto s1 = propagate(c, Channel::bb, 2 * c.period(), o);
    const auto s1b = propagate(c, Channel::bb, 2 * c.period(), o);
    o.g_scale = 1.5;
    const auto s2 = propagate(c, Channel::bb, 2 * c.period(), o);
    const double p1 = s1.at(s1.phase, 2 * c.period()), p2 = s2.at(s2.phase, 2 * c.period());
    CHECK(p1 > 0.0);
    CHECK(p2 > p1);
    CHECK(s1.to_csv(c.period()) == s1b.to_csv(c.period()));
    const auto pert = phase_per_period_perturbative(c);
    CHECK(p1 == doctest::Approx(2 * pert.quadrature).epsilon(0.1));
}

TEST_CASE("switching config validation reaches propagate") {
    auto c = SwitchingConfig::rb87_benchmark();
    c.omega = -1.0;
    CHECK_THROWS_AS(propagate(c, Channel::bb, 1.0), ValidationError);
}
