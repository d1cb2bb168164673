#include "exchgraph/gf2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exchgraph/error.hpp"
#include "exchgraph/special.hpp"

namespace exchgraph::gf2 {

namespace {

std::string pow2_decimal(long e, bool minus_one) {
    std::vector<int> digits{1};  // little-endian
    for (long k = 0; k < e; ++k) {
        int carry = 0;
        for (int& d : digits) {
            const int v = 2 * d + carry;
            d = v % 10;
            carry = v / 10;
        }
        if (carry) digits.push_back(carry);
    }
    // 2^e never ends in 0, so subtracting one touches the last digit only.
    if (minus_one) digits[0] -= 1;
    std::string s;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(static_cast<char>('0' + *it));
    return s;
}

constexpr double kLog2 = 0.69314718055994530942;

}  // namespace

BigCount pow2(long e, bool minus_one) {
    if (e < 0) throw InvalidParameter("pow2 exponent must be >= 0");
    BigCount c;
    c.exponent = e;
    c.minus_one = minus_one;
    if (e <= kExactExponentLimit) c.exact = pow2_decimal(e, minus_one);
    if (!minus_one) {
        c.log2 = static_cast<double>(e);
    } else if (e == 0) {
        c.log2 = -std::numeric_limits<double>::infinity();
    } else {
        c.log2 = static_cast<double>(e) + std::log1p(-std::ldexp(1.0, static_cast<int>(-std::min(e, 1100L)))) / kLog2;
    }
    return c;
}

long rank(const BitMatrix& x) {
    BitMatrix t = x.transpose();  // n rows, m columns
    const std::size_t rows = t.rows(), cols = t.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t w = c / BitMatrix::kBits;
        const BitMatrix::Word bit = BitMatrix::Word{1} << (c % BitMatrix::kBits);
        std::size_t p = r;
        while (p < rows && !(t.row(p)[w] & bit)) ++p;
        if (p == rows) continue;
        if (p != r) {
            auto a = t.row(p), b = t.row(r);
            std::swap_ranges(a.begin() + w, a.end(), b.begin() + w);
        }
        const auto piv = t.row(r);
        for (std::size_t q = r + 1; q < rows; ++q) {
            auto row = t.row(q);
            if (!(row[w] & bit)) continue;
            for (std::size_t k = w; k < row.size(); ++k) row[k] ^= piv[k];
        }
        ++r;
    }
    return static_cast<long>(r);
}

Gf2Report rank_gf2(const BitMatrix& x) {
    Gf2Report g;
    g.m = static_cast<long>(x.rows());
    g.n = static_cast<long>(x.cols());
    g.rank = rank(x);
    g.nullity_of_transpose = g.m - g.rank;
    g.N_solutions = pow2(g.nullity_of_transpose);
    g.S_hypercycles = pow2(g.n - g.rank, true);
    return g;
}

ExpectedSolutions expected_solutions(const MixingSpec& spec, long n, long m) {
    mixing::validate(spec, n);
    if (m < 0) throw InvalidParameter("expected_solutions needs m >= 0");
    ExpectedSolutions r;
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    std::vector<double> logs;
    logs.reserve(n + 1);
    for (long j = 0; j <= n; ++j) {
        const double xi = j == 0 ? 1.0 : mixing::xi(spec, n, j);
        if (j > 0 && std::abs(xi) < 1e-12) r.z_set.push_back(j);
        const double base = 1.0 + xi;
        double lt;
        if (m == 0) {
            lt = 0.0;
        } else if (base <= 0.0) {
            lt = -std::numeric_limits<double>::infinity();
        } else {
            lt = md * std::log1p(xi);
        }
        logs.push_back(special::log_binomial(nd, static_cast<double>(j)) + lt);
    }
    const double mx = *std::max_element(logs.begin(), logs.end());
    double s = 0.0;
    for (double l : logs) s += std::exp(l - mx);
    r.log_value = mx + std::log(s) - nd * kLog2;
    r.value = std::exp(r.log_value);
    return r;
}

namespace {

double entropy_term(double x) { return special::xlogx(x) + special::xlogx(1.0 - x) + kLog2; }

// x log x + (1 - x) log(1 - x), accurate for tiny x
double neg_entropy(double x) { return special::xlogx(x) + (x < 1.0 ? (1.0 - x) * std::log1p(-x) : 0.0); }

// log((1 + L(2x)) / 2) from 1 - L(2x), without cancellation near x = 0.
double log_half_one_plus_laplace(const Seed& seed, double x) {
    if (x == 0.0) return 0.0;
    return std::log1p(-0.5 * seed::one_minus_laplace(seed, 2.0 * x));
}

double log_one_plus_laplace(const Seed& seed, double x) { return kLog2 + log_half_one_plus_laplace(seed, x); }

// Theta_gamma(x) - Theta_gamma(0), computed without forming either term.
double excess(double a, double gamma, double x) { return a / gamma - neg_entropy(x); }

struct RateScan {
    std::vector<double> xs;
    std::vector<double> a;  // log((1 + L(2x)) / 2)
};

// 1024 linear points on [0, 1] plus log-spaced points down to 1e-300. For a
// finite-mean seed the excess is positive only below x ~ exp(-E[T]/gamma),
// which the linear grid cannot reach for small gamma.
RateScan scan_grid(const Seed& seed) {
    constexpr int kGrid = 1024;
    std::vector<double> xs;
    for (int k = 1188; k >= 1; --k) xs.push_back(std::pow(10.0, -3.0 - 0.25 * k));
    for (int k = 0; k < kGrid; ++k) xs.push_back(static_cast<double>(k) / (kGrid - 1));
    std::sort(xs.begin(), xs.end());
    RateScan s;
    s.xs = xs;
    for (double x : xs) s.a.push_back(log_half_one_plus_laplace(seed, x));
    return s;
}

RateReport sup_from_scan(const Seed& seed, double gamma, const RateScan& scan, bool keep_grid) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidParameter("gamma must lie in (0, 1]");
    RateReport r;
    r.gamma = gamma;
    r.theta0 = (1.0 / gamma - 1.0) * kLog2;
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < scan.xs.size(); ++k) {
        const double v = excess(scan.a[k], gamma, scan.xs[k]);
        if (keep_grid) r.theta_values.emplace_back(scan.xs[k], r.theta0 + v);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    double best_x = scan.xs[best];
    // golden-section refinement on the linear part of the grid
    if (best_x >= 1e-3) {
        double lo = scan.xs[best == 0 ? 0 : best - 1];
        double hi = scan.xs[std::min(best + 1, scan.xs.size() - 1)];
        auto f = [&](double x) { return excess(log_half_one_plus_laplace(seed, x), gamma, x); };
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
        double fa = f(a), fb = f(b);
        while (hi - lo > 1e-10) {
            if (fa >= fb) {
                hi = b;
                b = a;
                fb = fa;
                a = hi - phi * (hi - lo);
                fa = f(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + phi * (hi - lo);
                fb = f(b);
            }
        }
        const double xm = 0.5 * (lo + hi);
        const double fm = f(xm);
        if (fm > best_v) {
            best_v = fm;
            best_x = xm;
        }
    }
    r.I_gamma = r.theta0 + best_v;
    r.argmax_x = best_x;
    r.exceeds_baseline = best_x > 0.0 && best_v > 1e-9 * std::abs(neg_entropy(best_x));
    return r;
}

}  // namespace

double theta_rate(const Seed& seed, double gamma, double x) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidParameter("gamma must lie in (0, 1]");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidParameter("theta_rate needs x in [0, 1]");
    return log_one_plus_laplace(seed, x) / gamma - entropy_term(x);
}

RateReport rate_sup(const Seed& seed, double gamma) {
    seed::validate(seed);
    return sup_from_scan(seed, gamma, scan_grid(seed), true);
}

ThresholdReport gamma_critical(const Seed& seed) {
    seed::validate(seed);
    if (std::isfinite(seed::mean(seed)))
        throw NoThresholdError("seed " + seed::name(seed) + " has a finite mean: no threshold");

    ThresholdReport rep;
    for (double x : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) rep.tail_ratios.emplace_back(x, std::log(x) / seed::t_laplace(seed, 2.0 * x));
    for (std::size_t k = 1; k < rep.tail_ratios.size(); ++k) {
        if (!(std::abs(rep.tail_ratios[k].second) < std::abs(rep.tail_ratios[k - 1].second)))
            throw NoThresholdError("heavy-tail ratio log(x)/int t e^{-2xt} dF does not decay toward 0");
    }
    if (!(std::abs(rep.tail_ratios.back().second) < 0.5 * std::abs(rep.tail_ratios.front().second)))
        throw NoThresholdError("heavy-tail ratio log(x)/int t e^{-2xt} dF does not decay toward 0");

    const RateScan scan = scan_grid(seed);
    auto pred = [&](double g) {
        const bool v = sup_from_scan(seed, g, scan, false).exceeds_baseline;
        rep.trace.emplace_back(g, v);
        return v;
    };
    // A coarse sweep first, so the trace can expose a non-monotone predicate
    // that bisection alone would never see.
    for (int k = 1; k <= 20; ++k) pred(0.05 * k);
    double lo = 1e-4, hi = 1.0;
    if (!rep.trace.back().second) throw NoThresholdError("supremum stays at the baseline for every gamma in (0, 1]");
    if (pred(lo)) throw NoThresholdError("supremum exceeds the baseline already at gamma = 1e-4");
    for (const auto& [g, v] : rep.trace) {
        if (v) hi = std::min(hi, g);
    }
    for (const auto& [g, v] : rep.trace) {
        if (!v && g < hi) lo = std::max(lo, g);
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    rep.gamma_c = 0.5 * (lo + hi);

    auto sorted = rep.trace;
    std::sort(sorted.begin(), sorted.end());
    rep.monotone = true;
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k - 1].second && !sorted[k].second) rep.monotone = false;
    }
    return rep;
}

}  // namespace exchgraph::gf2
