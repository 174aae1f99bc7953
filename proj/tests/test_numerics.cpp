#include <doctest.h>

#include <cmath>
#include <string>

#include "coldgate/errors.hpp"
#include "coldgate/numerics.hpp"
#include "coldgate/units.hpp"

using namespace coldgate;

TEST_CASE("adaptive quadrature") {
    CHECK(num::integrate([](double x) { return std::sin(x); }, 0.0, kPi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(num::integrate([](double x) { return std::exp(-x * x); }, -10, 10) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    const cplx z = num::integrate_complex([](double t) { return std::exp(cplx(0, t)); }, 0.0, kPi / 2);
    CHECK(std::abs(z - cplx(1.0, 1.0)) < 1e-10);
}

TEST_CASE("quadrature gives up on a singular integrand") {
    CHECK_THROWS_AS(num::integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, 1e-12, 12), QuadratureFailure);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto& r = num::gauss_legendre(8);
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        s += r.w[i] * std::pow(r.x[i], 14);
        w += r.w[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("golden section and finite differences") {
    const double m = num::golden_section_min([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, -2, 2);
    CHECK(m == doctest::Approx(0.3).epsilon(1e-6));
    auto f = [](double x) { return std::sin(x); };
    CHECK(num::first_derivative(f, 0.4, 1e-3) == doctest::Approx(std::cos(0.4)).epsilon(1e-11));
    CHECK(num::second_derivative(f, 0.4, 1e-3) == doctest::Approx(-std::sin(0.4)).epsilon(1e-8));
}

TEST_CASE("cubic spline interpolates and differentiates smooth data") {
    std::vector<double> x, y;
    for (int i = 0; i <= 200; ++i) {
        x.push_back(i * 0.05);
        y.push_back(std::sin(x.back()));
    }
    num::CubicSpline s(x, y);
    CHECK(s(3.333) == doctest::Approx(std::sin(3.333)).epsilon(1e-6));
    CHECK(s.derivative(3.333, 1) == doctest::Approx(std::cos(3.333)).epsilon(1e-4));
    CHECK(s(x[17]) == doctest::Approx(y[17]));
}

TEST_CASE("special functions") {
    CHECK(num::laguerre(0, 1.7) == doctest::Approx(1.0));
    CHECK(num::laguerre(2, 1.7) == doctest::Approx(0.5 * (1.7 * 1.7 - 4 * 1.7 + 2)));
    for (int n : {0, 1, 5, 12}) {
        const double norm = num::integrate([n](double x) { return std::pow(num::hermite_function(n, x), 2); }, -15, 15);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    }
    const double cross = num::integrate([](double x) { return num::hermite_function(3, x) * num::hermite_function(5, x); }, -15, 15);
    CHECK(std::abs(cross) < 1e-10);
}

TEST_CASE("format_double round trips and ignores locale") {
    for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 1e-300, 0.0}) {
        const std::string s = num::format_double(v);
        CHECK(s.find(',') == std::string::npos);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("phase unwrapping removes 2pi jumps") {
    std::vector<double> p;
    for (int i = 0; i < 50; ++i) p.push_back(std::remainder(0.4 * i, 2 * kPi));
    num::unwrap(p);
    for (int i = 0; i < 50; ++i) CHECK(p[i] == doctest::Approx(0.4 * i).epsilon(1e-12));
}

TEST_CASE("oscillator units") {
    const auto u = OscUnits::from_frequency_hz(23.4e3);
    CHECK(u.length_to_si(u.length_from_si(5.1e-9)) == doctest::Approx(5.1e-9));
    // a_x for Rb87 at 23.4 kHz is about 70 nm
    CHECK(u.length_m() == doctest::Approx(70.5e-9).epsilon(0.01));
}
