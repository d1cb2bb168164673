#include "exchgraph/seed.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "exchgraph/error.hpp"
#include "exchgraph/quadrature.hpp"
#include "exchgraph/special.hpp"

namespace exchgraph::seed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<double> log_spaced(double lo_exp, double hi_exp) {
    std::vector<double> pts;
    for (double e = lo_exp; e <= hi_exp; e += 1.0) pts.push_back(std::ldexp(1.0, static_cast<int>(e)));
    return pts;
}

// log int_0^inf c(tau) K(tau) dtau for the Lerch weight c.
template <class LogK>
double lerch_log_integral(const LerchSeed& l, const LogK& log_k, double extra_center = -1.0) {
    std::vector<double> pts = log_spaced(-30, 7);
    const double peak = (l.s - 1.0) / (l.alpha - 1.0);
    for (double p : quad::peak_breakpoints(0.0, kInf, peak, std::max(peak, 1.0) / 4.0)) pts.push_back(p);
    if (extra_center > 0.0) {
        for (double p : quad::peak_breakpoints(0.0, kInf, extra_center, extra_center / 4.0)) pts.push_back(p);
    }
    auto f = [&](double tau) { return detail::lerch_log_weight(l, tau) + log_k(tau); };
    return quad::log_integrate(f, 0.0, kInf, std::move(pts));
}

double log_expm1(double tau) { return tau > 30.0 ? tau + std::log1p(-std::exp(-tau)) : std::log(std::expm1(tau)); }

double bisect_quantile(const Seed& s, double v, double hi) {
    double lo = support_min(s);
    if (!(hi > lo)) hi = lo + 1.0;
    int guard = 0;
    while (cdf(s, hi) < v) {
        hi *= 2.0;
        if (++guard > 2000) throw InversionError("seed quantile: could not bracket");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 || !(mid > lo && mid < hi)) return mid;
        if (cdf(s, mid) < v) lo = mid;
        else hi = mid;
    }
    throw InversionError("seed quantile: bisection did not converge");
}

}  // namespace

namespace detail {

double lerch_log_weight(const LerchSeed& l, double tau) {
    if (!(tau > 0.0)) return -kInf;
    static thread_local double cached_alpha = -1.0, cached_s = -1.0, cached_norm = 0.0;
    if (l.alpha != cached_alpha || l.s != cached_s) {
        cached_norm = std::lgamma(l.s) + std::log(special::hurwitz_zeta(l.s, l.alpha));
        cached_alpha = l.alpha;
        cached_s = l.s;
    }
    return (l.s - 1.0) * std::log(tau) - tau * (l.alpha - 1.0) - cached_norm;
}

}  // namespace detail

void validate(const Seed& s) {
    std::visit(overloaded{
                   [](const DiracSeed& d) {
                       if (!(d.t >= 0.0) || !std::isfinite(d.t)) throw InvalidParameter("Dirac seed requires t >= 0");
                   },
                   [](const ExponentialSeed& e) {
                       if (!(e.gamma > 0.0)) throw InvalidParameter("exponential seed requires gamma > 0");
                   },
                   [](const GammaSeed& g) {
                       if (!(g.r > 0.0) || !(g.gamma > 0.0)) throw InvalidParameter("gamma seed requires r > 0 and gamma > 0");
                   },
                   [](const LerchSeed& l) {
                       if (!(l.alpha > 1.0) || !(l.s > 1.0)) throw InvalidParameter("Lerch seed requires alpha > 1 and s > 1");
                   },
                   [](const ParetoTailSeed& p) {
                       if (!(p.alpha > 0.0) || !(p.eta > 0.0)) throw InvalidParameter("Pareto-tail seed requires alpha > 0 and eta > 0");
                   },
                   [](const PowerLawSeed& p) {
                       if (!(p.alpha > 0.0) || !(p.beta > 1.0)) throw InvalidParameter("power-law seed requires alpha > 0 and beta > 1");
                   },
               },
               s.v);
}

std::string name(const Seed& s) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const DiracSeed& d) { os << "Dirac(t=" << d.t << ")"; },
                   [&](const ExponentialSeed& e) { os << "Exponential(gamma=" << e.gamma << ")"; },
                   [&](const GammaSeed& g) { os << "Gamma(r=" << g.r << ", gamma=" << g.gamma << ")"; },
                   [&](const LerchSeed& l) { os << "Lerch(alpha=" << l.alpha << ", s=" << l.s << ")"; },
                   [&](const ParetoTailSeed& p) { os << "ParetoTail(alpha=" << p.alpha << ", eta=" << p.eta << ")"; },
                   [&](const PowerLawSeed& p) { os << "PowerLaw(alpha=" << p.alpha << ", beta=" << p.beta << ")"; },
               },
               s.v);
    return os.str();
}

bool has_density(const Seed& s) { return !std::holds_alternative<DiracSeed>(s.v); }

double support_min(const Seed& s) {
    if (auto d = std::get_if<DiracSeed>(&s.v)) return d->t;
    if (auto p = std::get_if<PowerLawSeed>(&s.v)) return p->alpha;
    return 0.0;
}

double survival(const Seed& s, double x) {
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return x >= d.t ? 0.0 : 1.0; },
                          [&](const ExponentialSeed& e) { return x <= 0.0 ? 1.0 : std::exp(-e.gamma * x); },
                          [&](const GammaSeed& g) { return x <= 0.0 ? 1.0 : special::gamma_q(g.r, g.gamma * x); },
                          [&](const LerchSeed& l) {
                              if (x <= 0.0) return 1.0;
                              return std::exp(lerch_log_integral(
                                  l, [&](double tau) { return -log_expm1(tau) - x * std::expm1(tau); }));
                          },
                          [&](const ParetoTailSeed& p) {
                              return x <= 0.0 ? 1.0 : std::exp(p.eta * (std::log(p.alpha) - std::log(p.alpha + x)));
                          },
                          [&](const PowerLawSeed& p) {
                              return x <= p.alpha ? 1.0 : std::exp((p.beta - 1.0) * (std::log(p.alpha) - std::log(x)));
                          },
                      },
                      s.v);
}

double cdf(const Seed& s, double x) {
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return x >= d.t ? 1.0 : 0.0; },
                          [&](const ExponentialSeed& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.gamma * x); },
                          [&](const GammaSeed& g) { return x <= 0.0 ? 0.0 : special::gamma_p(g.r, g.gamma * x); },
                          [&](const LerchSeed& l) {
                              if (x <= 0.0) return 0.0;
                              return std::exp(lerch_log_integral(l, [&](double tau) {
                                  return -log_expm1(tau) + std::log(-std::expm1(-x * std::expm1(tau)));
                              }));
                          },
                          [&](const ParetoTailSeed& p) {
                              return x <= 0.0 ? 0.0 : -std::expm1(p.eta * (std::log(p.alpha) - std::log(p.alpha + x)));
                          },
                          [&](const PowerLawSeed& p) {
                              return x <= p.alpha ? 0.0 : -std::expm1((p.beta - 1.0) * (std::log(p.alpha) - std::log(x)));
                          },
                      },
                      s.v);
}

double log_density(const Seed& s, double x) {
    return std::visit(overloaded{
                          [&](const DiracSeed&) -> double { throw InvalidParameter("Dirac seed has no density"); },
                          [&](const ExponentialSeed& e) {
                              return x < 0.0 ? -kInf : std::log(e.gamma) - e.gamma * x;
                          },
                          [&](const GammaSeed& g) {
                              if (x < 0.0) return -kInf;
                              return g.r * std::log(g.gamma) + (g.r - 1.0) * std::log(x) - g.gamma * x - std::lgamma(g.r);
                          },
                          [&](const LerchSeed& l) {
                              if (x < 0.0) return -kInf;
                              const double center = x > 1.0 ? (l.s - 1.0) / x : -1.0;
                              return lerch_log_integral(l, [&](double tau) { return -x * std::expm1(tau); }, center);
                          },
                          [&](const ParetoTailSeed& p) {
                              if (x < 0.0) return -kInf;
                              return std::log(p.eta) + p.eta * std::log(p.alpha) - (p.eta + 1.0) * std::log(p.alpha + x);
                          },
                          [&](const PowerLawSeed& p) {
                              if (x <= p.alpha) return -kInf;
                              return std::log(p.beta - 1.0) + (p.beta - 1.0) * std::log(p.alpha) - p.beta * std::log(x);
                          },
                      },
                      s.v);
}

double quantile(const Seed& s, double v, double hi) {
    if (!(v >= 0.0 && v < 1.0)) throw InvalidParameter("seed quantile requires v in [0, 1)");
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return d.t; },
                          [&](const ExponentialSeed& e) { return -std::log1p(-v) / e.gamma; },
                          [&](const GammaSeed&) { return bisect_quantile(s, v, hi); },
                          [&](const LerchSeed&) -> double {
                              throw InvalidParameter("the Lerch seed supports limit-law evaluation only, not sampling");
                          },
                          [&](const ParetoTailSeed& p) { return p.alpha * std::expm1(-std::log1p(-v) / p.eta); },
                          [&](const PowerLawSeed& p) { return p.alpha * std::exp(-std::log1p(-v) / (p.beta - 1.0)); },
                      },
                      s.v);
}

double mean(const Seed& s) {
    return std::visit(overloaded{
                          [](const DiracSeed& d) { return d.t; },
                          [](const ExponentialSeed& e) { return 1.0 / e.gamma; },
                          [](const GammaSeed& g) { return g.r / g.gamma; },
                          [](const LerchSeed& l) {
                              // E X = int c(tau) / u^2 dtau, finite iff s > 2.
                              if (l.s <= 2.0) return kInf;
                              return std::exp(lerch_log_integral(l, [](double tau) { return -2.0 * log_expm1(tau); }));
                          },
                          [](const ParetoTailSeed& p) { return p.eta > 1.0 ? p.alpha / (p.eta - 1.0) : kInf; },
                          [](const PowerLawSeed& p) {
                              return p.beta > 2.0 ? (p.beta - 1.0) * p.alpha / (p.beta - 2.0) : kInf;
                          },
                      },
                      s.v);
}

double one_minus_laplace(const Seed& s, double sarg) {
    if (sarg < 0.0) throw InvalidParameter("Laplace transform requires s >= 0");
    if (sarg == 0.0) return 0.0;
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return -std::expm1(-sarg * d.t); },
                          [&](const ExponentialSeed& e) { return sarg / (e.gamma + sarg); },
                          [&](const GammaSeed& g) { return -std::expm1(-g.r * std::log1p(sarg / g.gamma)); },
                          [&](const LerchSeed& l) {
                              return std::exp(lerch_log_integral(l, [&](double tau) {
                                  const double u = std::expm1(tau);
                                  return std::log(sarg) - log_expm1(tau) - std::log(u + sarg);
                              }));
                          },
                          [&](const ParetoTailSeed& p) {
                              // int_0^inf s e^{-s x} S(x) dx
                              auto f = [&](double x) {
                                  return std::log(sarg) - sarg * x + p.eta * (std::log(p.alpha) - std::log(p.alpha + x));
                              };
                              std::vector<double> pts = log_spaced(-30, std::max(30.0, std::ceil(-std::log2(sarg)) + 8.0));
                              return std::exp(quad::log_integrate(f, 0.0, kInf, std::move(pts)));
                          },
                          [&](const PowerLawSeed& p) {
                              const double y = sarg * p.alpha;
                              return -std::expm1(-y) +
                                     std::exp((p.beta - 1.0) * std::log(y) + special::log_upper_gamma(2.0 - p.beta, y));
                          },
                      },
                      s.v);
}

double laplace(const Seed& s, double sarg) { return 1.0 - one_minus_laplace(s, sarg); }

double t_laplace(const Seed& s, double sarg) {
    if (sarg < 0.0) throw InvalidParameter("Laplace transform requires s >= 0");
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return d.t * std::exp(-sarg * d.t); },
                          [&](const ExponentialSeed& e) { return e.gamma / ((e.gamma + sarg) * (e.gamma + sarg)); },
                          [&](const GammaSeed& g) {
                              return g.r / g.gamma * std::exp(-(g.r + 1.0) * std::log1p(sarg / g.gamma));
                          },
                          [&](const LerchSeed& l) {
                              return std::exp(lerch_log_integral(
                                  l, [&](double tau) { return -2.0 * std::log(std::expm1(tau) + sarg); }));
                          },
                          [&](const ParetoTailSeed& p) {
                              auto f = [&](double x) {
                                  return std::log(x) - sarg * x + std::log(p.eta) + p.eta * std::log(p.alpha) -
                                         (p.eta + 1.0) * std::log(p.alpha + x);
                              };
                              std::vector<double> pts = log_spaced(-30, std::max(30.0, std::ceil(-std::log2(sarg)) + 8.0));
                              return std::exp(quad::log_integrate(f, 0.0, kInf, std::move(pts)));
                          },
                          [&](const PowerLawSeed& p) {
                              if (sarg == 0.0) return mean(s);
                              return std::exp(std::log(p.beta - 1.0) + (p.beta - 1.0) * std::log(p.alpha) +
                                              (p.beta - 2.0) * std::log(sarg) +
                                              special::log_upper_gamma(2.0 - p.beta, sarg * p.alpha));
                          },
                      },
                      s.v);
}

}  // namespace exchgraph::seed
