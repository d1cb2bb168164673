#include "exchgraph/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "exchgraph/error.hpp"
#include "exchgraph/quadrature.hpp"

namespace exchgraph {

namespace quad {

std::vector<double> peak_breakpoints(double lo, double hi, double center, double width) {
    std::vector<double> pts{lo};
    if (std::isfinite(hi)) pts.push_back(hi);
    if (!(width > 0.0) || !std::isfinite(center)) return pts;
    for (double k : {0.0, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        for (double s : {-1.0, 1.0}) {
            const double p = center + s * k * width;
            if (p > lo && p < hi) pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace quad

namespace special {

double log_factorial(double k) { return std::lgamma(k + 1.0); }

double log_binomial(double n, double k) {
    if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

double gamma_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int i = 1; i < kMaxIter; ++i) {
        term *= x / (a + i);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw Error("gamma_p: series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw Error("gamma_q: continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw InvalidParameter("gamma_p requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw InvalidParameter("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_series(a, x) : gamma_fraction(a, x);
}

double log_upper_gamma(double a, double x) {
    if (!(x > 0.0)) throw InvalidParameter("log_upper_gamma requires x > 0");
    // t^{a-1} e^{-t} peaks at a-1 with width ~ sqrt(a-1); below x it is decreasing.
    const double peak = std::max(x, a - 1.0);
    const double width = std::sqrt(std::max(a - 1.0, 1.0));
    auto log_f = [a](double t) { return (a - 1.0) * std::log(t) - t; };
    return quad::log_integrate(log_f, x, std::numeric_limits<double>::infinity(),
                               quad::peak_breakpoints(x, std::numeric_limits<double>::infinity(), peak, width));
}

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0) || !(a > 0.0)) throw InvalidParameter("hurwitz_zeta requires s > 1 and a > 0");
    constexpr int N = 10000;
    // Smallest terms first, compensated.
    double sum = 0.0, comp = 0.0;
    for (int k = N - 1; k >= 0; --k) {
        const double y = std::pow(a + k, -s) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // Euler-Maclaurin remainder for sum_{k>=N} (a+k)^{-s}.
    const double z = a + N;
    const double tail = std::pow(z, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(z, -s) +
                        s * std::pow(z, -s - 1.0) / 12.0 -
                        s * (s + 1.0) * (s + 2.0) * std::pow(z, -s - 3.0) / 720.0;
    return sum + tail;
}

}  // namespace special
}  // namespace exchgraph
