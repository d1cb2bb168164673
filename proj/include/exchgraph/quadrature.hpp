#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration.
//
// All integrals in the library funnel through here: moments of the mixing
// law, exact degree pmfs, incomplete gamma functions and Laplace transforms.
// Intervals live in one priority queue ordered by error estimate, so a
// list of initial breakpoints (peaks, kinks, table knots) is refined
// against a single global tolerance.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "exchgraph/error.hpp"

namespace exchgraph::quad {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b, value, error;
    int map;  // index into the list of integrand maps
    bool operator<(const Piece& o) const { return error < o.error; }
};

// QUADPACK qk15 with its error heuristic (including the roundoff floor).
template <class F>
Piece gk15(const F& f, double a, double b, int map) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
    return {a, b, result, err, map};
}

template <class Eval>
Result run(const Eval& eval, std::vector<Piece> heap_init, const Options& opt, const char* what) {
    std::priority_queue<Piece> heap;
    double total = 0.0, total_err = 0.0;
    for (const auto& p : heap_init) {
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int count = static_cast<int>(heap.size());
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (count >= opt.max_intervals) throw QuadratureError(std::string(what) + ": subdivision limit reached", total_err);
        Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in floating point.
            if (total_err - worst.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) break;
            throw QuadratureError(std::string(what) + ": interval collapsed", total_err);
        }
        heap.pop();
        auto f = [&](double x) { return eval(worst.map, x); };
        Piece left = gk15(f, worst.a, mid, worst.map);
        Piece right = gk15(f, mid, worst.b, worst.map);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to drop accumulated drift from the incremental updates.
    double sum = 0.0, err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(sum)) throw QuadratureError(std::string(what) + ": non-finite integrand", err);
    return {sum, err, count};
}

}  // namespace detail

/// Integrate f over [points.front(), points.back()], seeding the subdivision
/// with every interior point. Points must be nondecreasing.
template <class F>
Result integrate(const F& f, std::span<const double> points, const Options& opt = {}) {
    std::vector<detail::Piece> init;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) init.push_back(detail::gk15(f, points[i], points[i + 1], 0));
    }
    if (init.empty()) return {};
    return detail::run([&](int, double x) { return f(x); }, std::move(init), opt, "integrate");
}

template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
    const double pts[2] = {a, b};
    return integrate(f, std::span<const double>(pts, 2), opt);
}

/// Integrate f over [points.front(), +inf). The finite pieces are handled
/// directly; the last one is mapped through x = b + t/(1-t).
template <class F>
Result integrate_to_infinity(const F& f, std::span<const double> points, const Options& opt = {}) {
    const double b = points.back();
    auto mapped = [&](double t) {
        const double s = 1.0 - t;
        const double x = b + t / s;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v / (s * s);
    };
    auto eval = [&](int map, double x) { return map == 0 ? f(x) : mapped(x); };
    std::vector<detail::Piece> init;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) init.push_back(detail::gk15(f, points[i], points[i + 1], 0));
    }
    init.push_back(detail::gk15(mapped, 0.0, 1.0, 1));
    return detail::run(eval, std::move(init), opt, "integrate_to_infinity");
}

template <class F>
Result integrate_to_infinity(const F& f, double a, const Options& opt = {}) {
    const double pts[1] = {a};
    return integrate_to_infinity(f, std::span<const double>(pts, 1), opt);
}

/// Breakpoints clustered around a peak at `center` with scale `width`,
/// clipped to [lo, hi]. Always contains lo and hi (hi may be +inf, in which
/// case it is omitted).
std::vector<double> peak_breakpoints(double lo, double hi, double center, double width);

/// log of the integral of exp(log_f) over [lo, hi] (hi may be +inf).
/// `points` are extra breakpoints inside the range. The integrand is
/// rescaled by its maximum over the breakpoints and a log-spaced probe grid
/// so that values far outside double range still integrate. Returns -inf
/// when the integral vanishes.
template <class LogF>
double log_integrate(const LogF& log_f, double lo, double hi, std::vector<double> points, const Options& opt = {}) {
    const bool infinite = std::isinf(hi);
    points.push_back(lo);
    if (!infinite) points.push_back(hi);
    std::erase_if(points, [&](double p) { return !(p >= lo) || (!infinite && p > hi) || std::isnan(p); });
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    double scale = -std::numeric_limits<double>::infinity();
    auto probe = [&](double x) {
        const double v = log_f(x);
        if (std::isfinite(v)) scale = std::max(scale, v);
    };
    for (double p : points) probe(p);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        for (int j = 1; j < 8; ++j) probe(points[i] + (points[i + 1] - points[i]) * j / 8.0);
    }
    if (infinite) {
        const double b = points.back();
        for (int j = 0; j < 60; ++j) probe(b + std::ldexp(1.0, j - 10));
    }
    if (!std::isfinite(scale)) return -std::numeric_limits<double>::infinity();

    auto f = [&](double x) {
        const double v = log_f(x);
        return v == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(v - scale);
    };
    const Result r = infinite ? integrate_to_infinity(f, std::span<const double>(points), opt)
                              : integrate(f, std::span<const double>(points), opt);
    if (r.value <= 0.0) return -std::numeric_limits<double>::infinity();
    return scale + std::log(r.value);
}

}  // namespace exchgraph::quad
