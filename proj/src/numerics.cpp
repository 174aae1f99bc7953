#include "coldgate/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>

#include "coldgate/errors.hpp"

namespace coldgate::num {

namespace {

template <typename T>
T simpson_step(const std::function<T(double)>& f, double a, double b, T fa, T fm, T fb,
               T whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureFailure("adaptive quadrature: tolerance not met within recursion budget");
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename T>
T adaptive(const std::function<T(double)>& f, double a, double b, double tol, int max_depth) {
    if (a == b) return T(0.0);
    // Oscillatory integrands on long intervals are pre-split into unit panels so
    // that the first Simpson estimate cannot vanish by accident.
    const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(b - a))));
    const double h = (b - a) / panels;
    T sum = T(0.0);
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? b : x0 + h;
        const T f0 = f(x0), f1 = f(x1), fm = f(0.5 * (x0 + x1));
        const T whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        sum += simpson_step(f, x0, x1, f0, fm, f1, whole, tol / panels, max_depth);
    }
    return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
    return adaptive<double>(f, a, b, abs_tol, max_depth);
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
               int max_depth) {
    return adaptive<cplx>(f, a, b, abs_tol, max_depth);
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_iter) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && std::abs(b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double first_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
           (12 * h * h);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw ValidationError("CubicSpline: need at least 3 matching samples");
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        if (h0 <= 0 || h1 <= 0) throw ValidationError("CubicSpline: abscissae must increase");
        const double a = h0 / 6, b = (h0 + h1) / 3, cc = h1 / 6;
        const double r = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (r - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
}

std::size_t CubicSpline::segment(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double t) const { return derivative(t, 0); }

double CubicSpline::derivative(double t, int order) const {
    const std::size_t i = segment(t);
    const double h = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    switch (order) {
        case 0:
            return A * y_[i] + B * y_[i + 1] +
                   ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6;
        case 1:
            return (y_[i + 1] - y_[i]) / h - (3 * A * A - 1) / 6 * h * m_[i] +
                   (3 * B * B - 1) / 6 * h * m_[i + 1];
        case 2:
            return A * m_[i] + B * m_[i + 1];
        case 3:
            return (m_[i + 1] - m_[i]) / h;
        default:
            return 0.0;
    }
}

double laguerre(int n, double x) {
    if (n == 0) return 1.0;
    double l0 = 1.0, l1 = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double hermite_function(int n, double x) {
    double p0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(double(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void unwrap(std::vector<double>& phases) {
    for (std::size_t i = 1; i < phases.size(); ++i) {
        double d = phases[i] - phases[i - 1];
        while (d > kPi) {
            phases[i] -= 2 * kPi;
            d -= 2 * kPi;
        }
        while (d < -kPi) {
            phases[i] += 2 * kPi;
            d += 2 * kPi;
        }
    }
}

}  // namespace coldgate::num
