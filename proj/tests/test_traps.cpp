#include <doctest.h>

#include <cmath>

#include "coldgate/errors.hpp"
#include "coldgate/traps.hpp"

using namespace coldgate;

TEST_CASE("lattice potentials at theta = 0 coincide") {
    LatticeBeamConfig c;
    for (double z : {0.0, 0.3, 1.1}) {
        const auto p = lattice_potentials(c, z, 0.0);
        CHECK(p.va == doctest::Approx(p.vb));
        CHECK(p.vb == doctest::Approx(c.depth * std::pow(std::sin(z), 2)));
    }
}

TEST_CASE("theta profile runs from 0 to pi/2") {
    CHECK(std::abs(theta_profile(-200.0, 25.0, 25.0) - kPi / 2) < 1e-12);
    CHECK(std::abs(theta_profile(200.0, 25.0, 25.0) - kPi / 2) < 1e-12);
    CHECK(theta_profile(0.0, 25.0, 25.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(theta_profile(10.0, 25.0, 25.0) == doctest::Approx(theta_profile(-10.0, 25.0, 25.0)));
}

TEST_CASE("harmonic fit of a parabola") {
    const auto w = harmonic_approx([](double x) { return 2.0 * (x - 0.25) * (x - 0.25); }, 0.0);
    CHECK(w.center == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(w.curvature == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(w.frequency == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(harmonic_approx([](double x) { return -x * x; }, 0.0), NoMinimum);
    CHECK_THROWS_AS(harmonic_approx([](double x) { return x; }, 0.0), NoMinimum);
}

TEST_CASE("lattice wells move apart with theta and carry the validity flag") {
    LatticeBeamConfig c;
    const auto a0 = lattice_well(c, Level::a, 0.0, 0.0), b0 = lattice_well(c, Level::b, 0.0, 0.0);
    CHECK(std::abs(a0.center - b0.center) < 1e-7);
    CHECK(a0.valid == false);  // depth 10 sits on the threshold
    c.depth = 50.0;
    const auto a = lattice_well(c, Level::a, 0.3, 0.0), b = lattice_well(c, Level::b, 0.3, 0.0);
    CHECK(b.center == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(a.center > b.center);
    CHECK(a.valid);
    c.k = -1.0;
    CHECK_THROWS_AS(lattice_well(c, Level::a, 0.0, 0.0), ValidationError);
}

TEST_CASE("trajectories") {
    const auto s = Trajectory::sin2_round_trip(2.0, 5.0);
    CHECK(s.is_round_trip());
    CHECK(s.position(0.0) == doctest::Approx(2.0));
    CHECK(s.derivative(1.3, 1) == doctest::Approx((s.position(1.3 + 1e-5) - s.position(1.3 - 1e-5)) / 2e-5).epsilon(1e-7));
    const auto l = Trajectory::linear(0.5, 2.0);
    CHECK_FALSE(l.is_round_trip());
    CHECK(l.position(2.0) == doctest::Approx(2.0));
    const auto sh = s.shifted(1.0).offset(3.0);
    CHECK(sh.t_begin() == doctest::Approx(-4.0));
    CHECK(sh.position(1.0) == doctest::Approx(5.0));
    const auto q = Trajectory::quartic_bump(1.0, 2.0);
    CHECK(q.derivative(0.7, 2) ==
          doctest::Approx((q.derivative(0.7 + 1e-5, 1) - q.derivative(0.7 - 1e-5, 1)) / 2e-5).epsilon(1e-7));
    CHECK_THROWS_AS(Trajectory::stationary(0.0, 0.0), ValidationError);

    std::vector<double> t, x;
    for (int i = 0; i <= 400; ++i) {
        t.push_back(-5.0 + i * 0.025);
        x.push_back(s.position(t.back()));
    }
    const auto sp = Trajectory::sampled(t, x);
    CHECK(sp.position(0.77) == doctest::Approx(s.position(0.77)).epsilon(1e-7));
}

TEST_CASE("switching configuration") {
    auto c = SwitchingConfig::rb87_benchmark();
    CHECK(c.validate().empty());
    CHECK(c.period() == doctest::Approx(2 * kPi));
    CHECK(c.tau == doctest::Approx(14 * kPi));
    CHECK(switching_potential(c, Level::b, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(switching_potential(c, Level::a, 1.0, c.x0) == doctest::Approx(0.0));
    CHECK(switching_potential(c, Level::b, -1.0, c.x0) == doctest::Approx(0.0));
    c.omega_y = c.omega_z = 3.0;
    CHECK_FALSE(c.validate().empty());
    c.x0 = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}
