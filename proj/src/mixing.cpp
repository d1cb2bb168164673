#include "exchgraph/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "exchgraph/error.hpp"
#include "exchgraph/quadrature.hpp"
#include "exchgraph/special.hpp"

namespace exchgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// log int_lo^1 theta^{q-1} dtheta for 0 < lo < 1.
double log_power_integral(double q, double lo) {
    const double L = std::log(lo);
    if (q == 0.0) return std::log(-L);
    if (q > 0.0) return std::log(-std::expm1(q * L)) - std::log(q);
    return q * L + std::log(-std::expm1(-q * L)) - std::log(-q);
}

double power_law_moment(double alpha, double beta, double n, double i) {
    const double a = alpha / n;
    return std::exp(log_power_integral(i + 1.0 - beta, a) - log_power_integral(1.0 - beta, a));
}

double power_law_tail(double alpha, double beta, double n, double t) {
    const double a = alpha / n;
    if (t <= a) return 1.0;
    if (t >= 1.0) return 0.0;
    return std::exp(log_power_integral(1.0 - beta, t) - log_power_integral(1.0 - beta, a));
}

double power_law_sample(double alpha, double beta, double n, Rng& rng) {
    const double a = alpha / n;
    const double c = -std::expm1((beta - 1.0) * std::log(a));  // 1 - a^{beta-1}
    const double u = rng.uniform();
    const double theta = a * std::exp(-std::log1p(-u * c) / (beta - 1.0));
    return std::min(theta, 1.0);
}

// Truncated power law alpha^{-g} on [A, B].
double log_lambda_norm(double A, double B, double g) {
    return log_power_integral(1.0 - g, A / B) + (1.0 - g) * std::log(B);
}

// Density of pi_n in the variable t = n theta, up to normalization.
struct TDensity {
    double lo, hi;
    std::function<double(double)> log_f;
    std::vector<double> knots;
    double log_norm;
};

std::vector<double> default_points(double lo, double hi) {
    std::vector<double> pts;
    for (int e = -40; e <= 64; ++e) {
        const double p = std::ldexp(1.0, e);
        if (p > lo && p < hi) pts.push_back(p);
    }
    return pts;
}

double log_integrate_t(const TDensity& d, const std::function<double(double)>& log_g, double lo, double hi,
                       std::vector<double> pts) {
    if (!(hi > lo)) return -kInf;
    for (double p : default_points(lo, hi)) pts.push_back(p);
    for (double k : d.knots) pts.push_back(k);
    auto f = [&](double t) {
        const double a = d.log_f(t);
        if (a == -kInf) return -kInf;
        return a + log_g(t);
    };
    return quad::log_integrate(f, lo, hi, std::move(pts));
}

TDensity make_density(const MixingSpec& spec, long n) {
    const double nd = static_cast<double>(n);
    TDensity d;
    std::visit(overloaded{
                   [&](const PowerLawMixing& p) {
                       d.lo = p.alpha;
                       d.hi = nd;
                       const double beta = p.beta;
                       d.log_f = [beta](double t) { return -beta * std::log(t); };
                       d.log_norm = (1.0 - beta) * std::log(nd) + log_power_integral(1.0 - beta, p.alpha / nd);
                   },
                   [&](const ModulatedPowerLawMixing& m) {
                       d.lo = m.alpha;
                       d.hi = nd;
                       const double beta = m.beta;
                       const GTable* g = &m.g;
                       d.log_f = [beta, g](double t) { return -beta * std::log(t) + std::log((*g)(t)); };
                       for (const auto& [tau, gv] : m.g.points) {
                           if (tau > d.lo && tau < d.hi) d.knots.push_back(tau);
                       }
                       d.log_norm = 0.0;
                       d.log_norm = log_integrate_t(d, [](double) { return 0.0; }, d.lo, d.hi, {});
                   },
                   [&](const SeedCdfMixing& s) {
                       d.lo = std::max(0.0, seed::support_min(s.seed));
                       d.hi = nd;
                       const Seed* sd = &s.seed;
                       d.log_f = [sd](double t) { return seed::log_density(*sd, t); };
                       d.log_norm = 0.0;
                       d.log_norm = log_integrate_t(d, [](double) { return 0.0; }, d.lo, d.hi, {});
                   },
                   [&](const auto&) { throw Error("internal: no density representation for this mixing family"); },
               },
               spec.v);
    return d;
}

std::vector<double> hint_points(std::span<const mixing::Hint> hints, double n, double lo, double hi) {
    std::vector<double> pts;
    for (const auto& h : hints) {
        if (!(h.width > 0.0)) continue;
        for (double p : quad::peak_breakpoints(lo, hi, h.center * n, h.width * n)) pts.push_back(p);
    }
    return pts;
}

}  // namespace

double GTable::operator()(double tau) const {
    if (points.empty()) return 1.0;
    if (tau <= points.front().first) return points.front().second;
    if (tau >= points.back().first) return points.back().second;
    auto it = std::upper_bound(points.begin(), points.end(), tau,
                               [](double x, const std::pair<double, double>& p) { return x < p.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (tau - x0) / (x1 - x0);
}

namespace mixing {

void validate(const MixingSpec& spec, long n) {
    if (n < 1) throw InvalidParameter("graph size n must be >= 1");
    const double nd = static_cast<double>(n);
    std::visit(overloaded{
                   [&](const DiracMixing& d) {
                       if (!(d.lambda >= 0.0 && d.lambda <= nd))
                           throw InvalidParameter("Dirac mixing requires 0 <= lambda <= n");
                   },
                   [&](const PowerLawMixing& p) {
                       if (!(p.beta > 1.0)) throw InvalidParameter("power-law mixing requires beta > 1");
                       if (!(p.alpha > 0.0 && p.alpha < nd))
                           throw InvalidParameter("power-law mixing requires 0 < alpha < n");
                   },
                   [&](const ModulatedPowerLawMixing& m) {
                       if (!(m.beta > 1.0)) throw InvalidParameter("modulated power-law mixing requires beta > 1");
                       if (!(m.alpha > 0.0 && m.alpha < nd))
                           throw InvalidParameter("modulated power-law mixing requires 0 < alpha < n");
                       if (m.g.points.empty()) throw InvalidParameter("g table is empty");
                       if (!(m.g.c1 > 0.0 && m.g.c1 <= m.g.c2 && std::isfinite(m.g.c2)))
                           throw InvalidParameter("g table requires 0 < c1 <= c2 < inf");
                       for (std::size_t i = 0; i < m.g.points.size(); ++i) {
                           const auto& [tau, g] = m.g.points[i];
                           if (!(tau >= 0.0) || (i > 0 && !(tau > m.g.points[i - 1].first)))
                               throw InvalidParameter("g table knots must be nonnegative and strictly increasing");
                           if (!(g >= m.g.c1 && g <= m.g.c2))
                               throw InvalidParameter("g table value outside the declared bounds [c1, c2]");
                       }
                   },
                   [&](const SeedCdfMixing& s) {
                       seed::validate(s.seed);
                       // Densities in the catalogue are positive near 0; only the
                       // shifted supports can leave F(n) = 0.
                       const double lo = seed::support_min(s.seed);
                       const bool is_dirac = std::holds_alternative<DiracSeed>(s.seed.v);
                       if (is_dirac ? lo > nd : lo >= nd) throw InvalidParameter("seed CDF vanishes at n: F(n) = 0");
                   },
                   [&](const HierarchicalMixing& h) {
                       if (!(h.gamma_exp > h.beta && h.beta > 2.0))
                           throw InvalidParameter("hierarchical mixing requires gamma_exp > beta > 2");
                       if (!(h.A > 0.0 && h.A < nd / 2.0))
                           throw InvalidParameter("hierarchical mixing requires 0 < A < n/2");
                   },
               },
               spec.v);
}

std::string name(const MixingSpec& spec) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const DiracMixing& d) { os << "Dirac(lambda=" << d.lambda << ")"; },
                   [&](const PowerLawMixing& p) { os << "PowerLaw(alpha=" << p.alpha << ", beta=" << p.beta << ")"; },
                   [&](const ModulatedPowerLawMixing& m) {
                       os << "ModulatedPowerLaw(alpha=" << m.alpha << ", beta=" << m.beta << ", knots=" << m.g.points.size()
                          << ")";
                   },
                   [&](const SeedCdfMixing& s) { os << "SeedCdf(" << seed::name(s.seed) << ")"; },
                   [&](const HierarchicalMixing& h) {
                       os << "Hierarchical(A=" << h.A << ", beta=" << h.beta << ", gamma=" << h.gamma_exp << ")";
                   },
               },
               spec.v);
    return os.str();
}

std::optional<double> power_law_beta(const MixingSpec& spec) {
    if (auto p = std::get_if<PowerLawMixing>(&spec.v)) return p->beta;
    if (auto m = std::get_if<ModulatedPowerLawMixing>(&spec.v)) return m->beta;
    return std::nullopt;
}

std::optional<double> point_mass(const MixingSpec& spec, long n) {
    if (auto d = std::get_if<DiracMixing>(&spec.v)) return d->lambda / static_cast<double>(n);
    if (auto s = std::get_if<SeedCdfMixing>(&spec.v)) {
        if (auto ds = std::get_if<DiracSeed>(&s->seed.v)) return ds->t / static_cast<double>(n);
    }
    return std::nullopt;
}

double sample_alpha(const HierarchicalMixing& h, long n, Rng& rng) {
    const double B = static_cast<double>(n) / 2.0;
    const double g1 = 1.0 - h.gamma_exp;  // < 0
    // Inverse CDF of alpha^{-gamma} on [A, B]: alpha = A (1 - U (1 - (A/B)^{gamma-1}))^{-1/(gamma-1)}.
    const double c = -std::expm1(-g1 * std::log(h.A / B));
    const double u = rng.uniform();
    return std::min(B, h.A * std::exp(std::log1p(-u * c) / g1));
}

double sample_theta_given_alpha(const HierarchicalMixing& h, long n, double alpha, Rng& rng) {
    return power_law_sample(alpha, h.beta, static_cast<double>(n), rng);
}

double sample_theta(const MixingSpec& spec, long n, Rng& rng) {
    const double nd = static_cast<double>(n);
    return std::visit(overloaded{
                          [&](const DiracMixing& d) { return d.lambda / nd; },
                          [&](const PowerLawMixing& p) { return power_law_sample(p.alpha, p.beta, nd, rng); },
                          [&](const ModulatedPowerLawMixing& m) {
                              for (;;) {
                                  const double theta = power_law_sample(m.alpha, m.beta, nd, rng);
                                  if (rng.uniform() * m.g.c2 < m.g(nd * theta)) return theta;
                              }
                          },
                          [&](const SeedCdfMixing& s) {
                              if (auto ds = std::get_if<DiracSeed>(&s.seed.v)) return ds->t / nd;
                              const double v = rng.uniform() * seed::cdf(s.seed, nd);
                              const double x = seed::quantile(s.seed, v, nd);
                              return std::clamp(x / nd, 0.0, 1.0);
                          },
                          [&](const HierarchicalMixing& h) {
                              const double alpha = sample_alpha(h, n, rng);
                              return sample_theta_given_alpha(h, n, alpha, rng);
                          },
                      },
                      spec.v);
}

double log_expect(const MixingSpec& spec, long n, const std::function<double(double)>& log_h, double lo, double hi,
                  std::span<const Hint> hints) {
    const double nd = static_cast<double>(n);
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (auto pm = point_mass(spec, n)) {
        if (*pm < lo || *pm > hi) return -kInf;
        return log_h(*pm);
    }
    if (auto h = std::get_if<HierarchicalMixing>(&spec.v)) {
        const double B = nd / 2.0;
        const double lnorm = log_lambda_norm(h->A, B, h->gamma_exp);
        auto outer = [&](double alpha) {
            const MixingSpec inner = MixingSpec::power_law(alpha, h->beta);
            return -h->gamma_exp * std::log(alpha) - lnorm + log_expect(inner, n, log_h, lo, hi, hints);
        };
        std::vector<double> pts = default_points(h->A, B);
        if (lo * nd > h->A && lo * nd < B) pts.push_back(lo * nd);
        if (hi * nd > h->A && hi * nd < B) pts.push_back(hi * nd);
        return quad::log_integrate(outer, h->A, B, std::move(pts));
    }
    const TDensity d = make_density(spec, n);
    const double tlo = std::max(d.lo, lo * nd), thi = std::min(d.hi, hi * nd);
    return log_integrate_t(d, [&](double t) { return log_h(t / nd); }, tlo, thi, hint_points(hints, nd, tlo, thi)) -
           d.log_norm;
}

double moment(const MixingSpec& spec, long n, long i) {
    validate(spec, n);
    if (i < 0) throw InvalidParameter("moment order must be >= 0");
    if (i == 0) return 1.0;
    const double nd = static_cast<double>(n);
    const double id = static_cast<double>(i);
    if (auto pm = point_mass(spec, n)) return std::pow(*pm, id);
    if (auto p = std::get_if<PowerLawMixing>(&spec.v)) return power_law_moment(p->alpha, p->beta, nd, id);
    if (auto h = std::get_if<HierarchicalMixing>(&spec.v)) {
        const double B = nd / 2.0;
        const double lnorm = log_lambda_norm(h->A, B, h->gamma_exp);
        auto f = [&](double alpha) {
            return -h->gamma_exp * std::log(alpha) - lnorm + std::log(power_law_moment(alpha, h->beta, nd, id));
        };
        return std::exp(quad::log_integrate(f, h->A, B, default_points(h->A, B)));
    }
    const Hint hint{1.0, 1.0 / id};
    return std::exp(log_expect(
        spec, n, [id](double theta) { return id * std::log(theta); }, 0.0, 1.0, std::span<const Hint>(&hint, 1)));
}

double tail(const MixingSpec& spec, long n, double t) {
    validate(spec, n);
    if (!(t > 0.0 && t < 1.0)) throw InvalidParameter("tail requires 0 < t < 1");
    const double nd = static_cast<double>(n);
    if (auto pm = point_mass(spec, n)) return *pm > t ? 1.0 : 0.0;
    return std::visit(overloaded{
                          [&](const PowerLawMixing& p) { return power_law_tail(p.alpha, p.beta, nd, t); },
                          [&](const SeedCdfMixing& s) {
                              const double Fn = seed::cdf(s.seed, nd);
                              if (Fn > 0.5) return std::max(0.0, seed::survival(s.seed, nd * t) - seed::survival(s.seed, nd)) / Fn;
                              return std::max(0.0, Fn - seed::cdf(s.seed, nd * t)) / Fn;
                          },
                          [&](const HierarchicalMixing& h) {
                              const double B = nd / 2.0;
                              const double lnorm = log_lambda_norm(h.A, B, h.gamma_exp);
                              auto f = [&](double alpha) {
                                  return -h.gamma_exp * std::log(alpha) - lnorm +
                                         std::log(power_law_tail(alpha, h.beta, nd, t));
                              };
                              std::vector<double> pts = default_points(h.A, B);
                              if (nd * t > h.A && nd * t < B) pts.push_back(nd * t);
                              return std::min(1.0, std::exp(quad::log_integrate(f, h.A, B, std::move(pts))));
                          },
                          [&](const auto&) {
                              return std::min(1.0, std::exp(log_expect(spec, n, [](double) { return 0.0; }, t, 1.0)));
                          },
                      },
                      spec.v);
}

double xi(const MixingSpec& spec, long n, long i) {
    validate(spec, n);
    if (i < 0) throw InvalidParameter("xi order must be >= 0");
    if (i == 0) return 1.0;
    const double id = static_cast<double>(i);
    if (auto pm = point_mass(spec, n)) return std::pow(1.0 - 2.0 * *pm, id);
    if (std::holds_alternative<PowerLawMixing>(spec.v) && i <= 8) {
        double sum = 0.0;
        for (long j = 0; j <= i; ++j) {
            sum += std::exp(special::log_binomial(id, static_cast<double>(j))) * std::pow(-2.0, static_cast<double>(j)) *
                   moment(spec, n, j);
        }
        return sum;
    }
    const Hint lo_hint{0.0, 0.5 / id}, hi_hint{1.0, 0.5 / id};
    const double pos = std::exp(log_expect(
        spec, n, [id](double th) { return id * std::log1p(-2.0 * th); }, 0.0, 0.5, std::span<const Hint>(&lo_hint, 1)));
    const double neg = std::exp(log_expect(
        spec, n, [id](double th) { return id * std::log(2.0 * th - 1.0); }, 0.5, 1.0, std::span<const Hint>(&hi_hint, 1)));
    return (i % 2 == 0) ? pos + neg : pos - neg;
}

double log_row_prob(const MixingSpec& spec, long n, long r) {
    validate(spec, n);
    if (r < 0 || r > n) throw InvalidParameter("row_prob requires 0 <= r <= n");
    const double nd = static_cast<double>(n), rd = static_cast<double>(r);
    if (auto pm = point_mass(spec, n)) {
        const double th = *pm;
        const double a = r == 0 ? 0.0 : rd * std::log(th);
        const double b = r == n ? 0.0 : (nd - rd) * std::log1p(-th);
        return a + b;
    }
    if (std::holds_alternative<PowerLawMixing>(spec.v) && n - r <= 10) {
        // Alternating expansion sum_j C(n-r, j) (-1)^j delta_{r+j}, accepted
        // only when the cancellation keeps ~10 significant digits.
        double sum = 0.0, comp = 0.0, abs_sum = 0.0;
        for (long j = 0; j <= n - r; ++j) {
            const double term = std::exp(special::log_binomial(nd - rd, static_cast<double>(j))) * moment(spec, n, r + j);
            const double y = (j % 2 == 0) ? term : -term;
            const double t = sum + y;
            comp += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
            sum = t;
            abs_sum += term;
        }
        sum += comp;
        if (sum > 0.0 && sum >= abs_sum * 1e-5) return std::log(sum);
    }
    const double width = std::max(std::sqrt(rd * (nd - rd) / nd), 1.0) / nd;
    const Hint hint{rd / nd, width};
    return log_expect(
        spec, n,
        [rd, nd](double th) {
            const double a = rd == 0.0 ? 0.0 : rd * std::log(th);
            const double b = rd == nd ? 0.0 : (nd - rd) * std::log1p(-th);
            return a + b;
        },
        0.0, 1.0, std::span<const Hint>(&hint, 1));
}

double row_prob(const MixingSpec& spec, long n, long r) { return std::exp(log_row_prob(spec, n, r)); }

}  // namespace mixing
}  // namespace exchgraph
