#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace coldgate {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

namespace num {

// Adaptive Simpson quadrature with an absolute tolerance.
// Throws QuadratureFailure when the recursion budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);
cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b,
               double abs_tol = 1e-10, int max_depth = 40);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Golden-section search for a minimum of f on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, int max_iter = 500);

// Five-point central differences.
double first_derivative(const std::function<double(double)>& f, double x, double h);
double second_derivative(const std::function<double(double)>& f, double x, double h);

// Natural cubic spline through (x_i, y_i); x strictly increasing.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;
    double derivative(double t, int order) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t segment(double t) const;
    std::vector<double> x_, y_, m_;
};

// Laguerre polynomial L_n(x) by recurrence.
double laguerre(int n, double x);

// Normalized Hermite function psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).
double hermite_function(int n, double x);

// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

// Unwraps a sequence of phases so that successive jumps are below pi.
void unwrap(std::vector<double>& phases);

}  // namespace num
}  // namespace coldgate
