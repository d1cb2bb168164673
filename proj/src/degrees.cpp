#include "exchgraph/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <sstream>

#include "exchgraph/error.hpp"
#include "exchgraph/quadrature.hpp"
#include "exchgraph/special.hpp"

namespace exchgraph::degrees {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double poisson_pmf(double lambda, long k) {
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double power_law_tail_pmf(double alpha, double beta, long k) {
    const double kd = static_cast<double>(k);
    return std::exp((beta - 1.0) * std::log(alpha) + std::log(beta - 1.0) +
                    special::log_upper_gamma(kd + 1.0 - beta, alpha) - std::lgamma(kd + 1.0));
}

std::vector<double> power_law_tail_table(double alpha, double beta, long kmax) {
    // Upward recurrence for g_k = Gamma(k+1-beta, alpha)/k!:
    //   g_{k+1} = [(k+1-beta) g_k + alpha^{k+1-beta} e^{-alpha}/k!] / (k+1),
    // started past k = beta where every term is positive.
    std::vector<double> p(static_cast<std::size_t>(kmax + 1));
    const double logc = (beta - 1.0) * std::log(alpha) + std::log(beta - 1.0);
    const long start = std::min<long>(kmax, static_cast<long>(std::ceil(beta)) + 1);
    for (long k = 0; k <= start; ++k) p[k] = power_law_tail_pmf(alpha, beta, k);
    double log_g = special::log_upper_gamma(static_cast<double>(start) + 1.0 - beta, alpha) -
                   std::lgamma(static_cast<double>(start) + 1.0);
    for (long k = start; k < kmax; ++k) {
        const double kd = static_cast<double>(k);
        const double a = kd + 1.0 - beta;
        const double log_free = a * std::log(alpha) - alpha - std::lgamma(kd + 1.0);
        // log of (a g_k + free) / (k+1), evaluated relative to the larger term.
        const double x = std::log(a) + log_g, y = log_free;
        const double mx = std::max(x, y);
        log_g = mx + std::log(std::exp(x - mx) + std::exp(y - mx)) - std::log(kd + 1.0);
        p[k + 1] = std::exp(logc + log_g);
    }
    return p;
}

double lerch_zipf_pmf(double alpha, double s, long k) {
    return std::pow(alpha + static_cast<double>(k), -s) / special::hurwitz_zeta(s, alpha);
}

// int c(tau) e^{-tau (k+1)} dtau for the Lerch seed.
double lerch_mixture_pmf(const LerchSeed& l, long k) {
    const double kd = static_cast<double>(k);
    const double peak = (l.s - 1.0) / (l.alpha + kd);
    std::vector<double> pts = quad::peak_breakpoints(0.0, kInf, peak, peak / 2.0);
    for (int e = -30; e <= 6; ++e) pts.push_back(std::ldexp(1.0, e));
    auto f = [&](double tau) { return seed::detail::lerch_log_weight(l, tau) - tau * (kd + 1.0); };
    return std::exp(quad::log_integrate(f, 0.0, kInf, std::move(pts)));
}

// p_0 = 1 - int e^{-t} S(t) dt, p_k = int (phi_{k-1} - phi_k) S dt with
// phi_k(t) = t^k e^{-t}/k!.
double survival_route_pmf(const Seed& s, long k) {
    const double kd = static_cast<double>(k);
    std::vector<double> pts = quad::peak_breakpoints(0.0, kInf, kd, std::sqrt(std::max(kd, 1.0)));
    const double lo = seed::support_min(s);
    if (lo > 0.0) pts.push_back(lo);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    quad::Options opt;
    opt.abs_tol = 1e-17;
    if (k == 0) {
        auto f = [&](double t) { return std::exp(-t) * seed::survival(s, t); };
        return 1.0 - quad::integrate_to_infinity(f, std::span<const double>(pts), opt).value;
    }
    const double lg = std::lgamma(kd);
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((kd - 1.0) * std::log(t) - t - lg) * (1.0 - t / kd) * seed::survival(s, t);
    };
    return std::max(0.0, quad::integrate_to_infinity(f, std::span<const double>(pts), opt).value);
}

double poisson_mixture_pmf(const Seed& s, long k) {
    return std::visit(overloaded{
                          [&](const DiracSeed& d) { return poisson_pmf(d.t, k); },
                          [&](const LerchSeed& l) { return lerch_mixture_pmf(l, k); },
                          [&](const auto&) { return survival_route_pmf(s, k); },
                      },
                      s.v);
}

// Closed forms that coincide with the Poisson mixture of a seed.
std::optional<LimitLaw> closed_form_mixture(const Seed& s) {
    if (auto d = std::get_if<DiracSeed>(&s.v)) return LimitLaw{PoissonLaw{d->t}};
    if (auto e = std::get_if<ExponentialSeed>(&s.v)) return LimitLaw{GeometricLaw{e->gamma}};
    if (auto g = std::get_if<GammaSeed>(&s.v)) return LimitLaw{NegativeBinomialLaw{g->r, g->gamma}};
    if (auto p = std::get_if<PowerLawSeed>(&s.v)) return LimitLaw{PowerLawTailLaw{p->alpha, p->beta}};
    if (auto l = std::get_if<LerchSeed>(&s.v)) return LimitLaw{LerchZipfLaw{l->alpha, l->s}};
    return std::nullopt;
}

double kahan_partial(const std::vector<double>& p, double g, long K) {
    double sum = 0.0, comp = 0.0;
    for (long k = 1; k <= K && k < static_cast<long>(p.size()); ++k) {
        const double y = std::pow(static_cast<double>(k), g) * p[k] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// int_0^K t^g dF(t)
double mixing_partial(const Seed& s, double g, double K) {
    if (auto d = std::get_if<DiracSeed>(&s.v)) return d->t <= K ? std::pow(d->t, g) : 0.0;
    if (auto p = std::get_if<PowerLawSeed>(&s.v)) {
        if (K <= p->alpha) return 0.0;
        const double q = g - p->beta + 1.0;
        const double c = (p->beta - 1.0) * std::pow(p->alpha, p->beta - 1.0);
        if (q == 0.0) return c * std::log(K / p->alpha);
        return c * (std::pow(K, q) - std::pow(p->alpha, q)) / q;
    }
    const double lo = seed::support_min(s);
    if (K <= lo) return 0.0;
    std::vector<double> pts;
    for (int e = -30; e <= 60; ++e) {
        const double x = std::ldexp(1.0, e);
        if (x > lo && x < K) pts.push_back(x);
    }
    auto f = [&](double t) { return g * std::log(t) + seed::log_density(s, t); };
    return std::exp(quad::log_integrate(f, lo, K, std::move(pts)));
}

bool stabilized(double p1, double p2, double p3) {
    const double inc = p3 - p2, prev = p2 - p1;
    return inc <= 1e-6 * std::abs(p3) || inc < 0.5 * prev;
}

}  // namespace

void validate(const LimitLaw& law) {
    std::visit(overloaded{
                   [](const PoissonLaw& p) {
                       if (!(p.lambda >= 0.0)) throw InvalidParameter("Poisson law requires lambda >= 0");
                   },
                   [](const PoissonMixtureLaw& p) { seed::validate(p.seed); },
                   [](const GeometricLaw& g) {
                       if (!(g.gamma > 0.0)) throw InvalidParameter("geometric law requires gamma > 0");
                   },
                   [](const NegativeBinomialLaw& nb) {
                       if (!(nb.r > 0.0 && nb.gamma > 0.0))
                           throw InvalidParameter("negative binomial law requires r > 0 and gamma > 0");
                   },
                   [](const PowerLawTailLaw& p) {
                       if (!(p.alpha > 0.0 && p.beta > 1.0))
                           throw InvalidParameter("power-law-tail law requires alpha > 0 and beta > 1");
                   },
                   [](const LerchZipfLaw& l) {
                       if (!(l.alpha > 0.0 && l.s > 1.0))
                           throw InvalidParameter("Lerch-Zipf law requires alpha > 0 and s > 1");
                   },
                   [](const HierarchicalMixtureLaw& h) {
                       if (!(h.A > 0.0 && h.gamma_exp > h.beta && h.beta > 1.0))
                           throw InvalidParameter("hierarchical mixture law requires A > 0 and gamma_exp > beta > 1");
                   },
               },
               law.v);
}

std::string name(const LimitLaw& law) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const PoissonLaw& p) { os << "Poisson(lambda=" << p.lambda << ")"; },
                   [&](const PoissonMixtureLaw& p) { os << "PoissonMixture(" << seed::name(p.seed) << ")"; },
                   [&](const GeometricLaw& g) { os << "Geometric(gamma=" << g.gamma << ")"; },
                   [&](const NegativeBinomialLaw& nb) { os << "NegativeBinomial(r=" << nb.r << ", gamma=" << nb.gamma << ")"; },
                   [&](const PowerLawTailLaw& p) { os << "PowerLawTail(alpha=" << p.alpha << ", beta=" << p.beta << ")"; },
                   [&](const LerchZipfLaw& l) { os << "LerchZipf(alpha=" << l.alpha << ", s=" << l.s << ")"; },
                   [&](const HierarchicalMixtureLaw& h) {
                       os << "HierarchicalMixture(A=" << h.A << ", beta=" << h.beta << ", gamma=" << h.gamma_exp << ")";
                   },
               },
               law.v);
    return os.str();
}

double mixed_binomial_pmf(const MixingSpec& spec, long n, long trials, long k) {
    if (k < 0 || k > trials) throw InvalidParameter("pmf argument k out of range");
    mixing::validate(spec, n);
    const double t = static_cast<double>(trials), kd = static_cast<double>(k);
    const double lb = special::log_binomial(t, kd);
    if (trials == n) return std::exp(lb + mixing::log_row_prob(spec, n, k));
    const double width = std::max(std::sqrt(kd * (t - kd) / t), 1.0) / t;
    const mixing::Hint hint{kd / t, width};
    return std::exp(lb + mixing::log_expect(
                             spec, n,
                             [kd, t](double th) {
                                 const double a = kd == 0.0 ? 0.0 : kd * std::log(th);
                                 const double b = kd == t ? 0.0 : (t - kd) * std::log1p(-th);
                                 return a + b;
                             },
                             0.0, 1.0, std::span<const mixing::Hint>(&hint, 1)));
}

double out_pmf_exact(const MixingSpec& spec, long n, long k) { return mixed_binomial_pmf(spec, n, n, k); }

std::vector<double> out_pmf_table(const MixingSpec& spec, long n, long kmax) {
    kmax = std::min(kmax, n);
    std::vector<double> p(static_cast<std::size_t>(kmax + 1));
    for (long k = 0; k <= kmax; ++k) p[k] = out_pmf_exact(spec, n, k);
    return p;
}

double in_pmf_exact(const MixingSpec& spec, long n, long m, long k) {
    if (k < 0 || k > m) throw InvalidParameter("pmf argument k out of range");
    const double mu = mixing::moment(spec, n, 1);
    const double md = static_cast<double>(m), kd = static_cast<double>(k);
    const double a = k == 0 ? 0.0 : kd * std::log(mu);
    const double b = k == m ? 0.0 : (md - kd) * std::log1p(-mu);
    return std::exp(special::log_binomial(md, kd) + a + b);
}

std::vector<double> in_pmf_table(const MixingSpec& spec, long n, long m, long kmax) {
    kmax = std::min(kmax, m);
    std::vector<double> p(static_cast<std::size_t>(kmax + 1));
    for (long k = 0; k <= kmax; ++k) p[k] = in_pmf_exact(spec, n, m, k);
    return p;
}

double limit_pmf(const LimitLaw& law, long k) {
    validate(law);
    if (k < 0) return 0.0;
    const double kd = static_cast<double>(k);
    return std::visit(overloaded{
                          [&](const PoissonLaw& p) { return poisson_pmf(p.lambda, k); },
                          [&](const PoissonMixtureLaw& p) { return poisson_mixture_pmf(p.seed, k); },
                          [&](const GeometricLaw& g) {
                              // product form keeps gamma = 1 exact: 2^{-(k+1)}
                              const double q = 1.0 / (1.0 + g.gamma);
                              const double v = g.gamma * q * std::pow(q, kd);
                              return v > 0.0 ? v : std::exp(std::log(g.gamma) - (kd + 1.0) * std::log1p(g.gamma));
                          },
                          [&](const NegativeBinomialLaw& nb) {
                              return std::exp(std::lgamma(nb.r + kd) - std::lgamma(kd + 1.0) - std::lgamma(nb.r) +
                                              nb.r * (std::log(nb.gamma) - std::log1p(nb.gamma)) -
                                              kd * std::log1p(nb.gamma));
                          },
                          [&](const PowerLawTailLaw& p) { return power_law_tail_pmf(p.alpha, p.beta, k); },
                          [&](const LerchZipfLaw& l) { return lerch_zipf_pmf(l.alpha, l.s, k); },
                          [&](const HierarchicalMixtureLaw& h) {
                              const double d = h.gamma_exp - h.beta;
                              return (h.gamma_exp - 1.0) / d * power_law_tail_pmf(h.A, h.beta, k) -
                                     (h.beta - 1.0) / d * power_law_tail_pmf(h.A, h.gamma_exp, k);
                          },
                      },
                      law.v);
}

std::vector<double> limit_pmf_table(const LimitLaw& law, long kmax) {
    validate(law);
    if (auto p = std::get_if<PowerLawTailLaw>(&law.v)) return power_law_tail_table(p->alpha, p->beta, kmax);
    if (auto h = std::get_if<HierarchicalMixtureLaw>(&law.v)) {
        const auto a = power_law_tail_table(h->A, h->beta, kmax);
        const auto b = power_law_tail_table(h->A, h->gamma_exp, kmax);
        const double d = h->gamma_exp - h->beta;
        std::vector<double> p(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) p[k] = (h->gamma_exp - 1.0) / d * a[k] - (h->beta - 1.0) / d * b[k];
        return p;
    }
    std::vector<double> p(static_cast<std::size_t>(kmax + 1));
    for (long k = 0; k <= kmax; ++k) p[k] = limit_pmf(law, k);
    return p;
}

double poisson_mixture_density_route(const Seed& s, long k) {
    seed::validate(s);
    if (!seed::has_density(s)) throw InvalidParameter("density route needs a seed with a density");
    const double kd = static_cast<double>(k);
    const double lo = seed::support_min(s);
    std::vector<double> pts = quad::peak_breakpoints(lo, kInf, std::max(kd, lo), std::sqrt(std::max(kd, 1.0)));
    for (int e = -30; e <= 8; ++e) {
        const double x = std::ldexp(1.0, e);
        if (x > lo) pts.push_back(x);
    }
    const double lg = std::lgamma(kd + 1.0);
    auto f = [&](double t) {
        const double a = k == 0 ? 0.0 : kd * std::log(t);
        return a - t - lg + seed::log_density(s, t);
    };
    return std::exp(quad::log_integrate(f, lo, kInf, std::move(pts)));
}

double tail_asymptote(double alpha, double beta, long k) {
    if (k < 1) throw InvalidParameter("tail_asymptote requires k >= 1");
    return std::pow(alpha, beta - 1.0) * (beta - 1.0) * std::pow(static_cast<double>(k), -beta);
}

MomentTransferReport moment_transfer_check(const LimitLaw& law, double gamma_ord, long K) {
    validate(law);
    if (K < 10) throw InvalidParameter("moment_transfer_check requires K >= 10");
    if (!(gamma_ord > 0.0)) throw InvalidParameter("moment_transfer_check requires gamma_ord > 0");
    Seed s;
    std::vector<double> pmf;
    if (auto p = std::get_if<PowerLawTailLaw>(&law.v)) {
        s = Seed::power_law(p->alpha, p->beta);
        pmf = power_law_tail_table(p->alpha, p->beta, K);
    } else if (auto pm = std::get_if<PoissonMixtureLaw>(&law.v)) {
        s = pm->seed;
        const auto closed = closed_form_mixture(s);
        pmf = limit_pmf_table(closed ? *closed : law, K);
    } else {
        throw InvalidParameter("moment_transfer_check takes a PoissonMixture or PowerLawTail law");
    }
    const long K1 = K / 100, K2 = K / 10;
    MomentTransferReport r;
    const double p1 = kahan_partial(pmf, gamma_ord, K1), p2 = kahan_partial(pmf, gamma_ord, K2);
    r.pmf_partial = kahan_partial(pmf, gamma_ord, K);
    const double m1 = mixing_partial(s, gamma_ord, static_cast<double>(K1));
    const double m2 = mixing_partial(s, gamma_ord, static_cast<double>(K2));
    r.mixing_partial = mixing_partial(s, gamma_ord, static_cast<double>(K));
    r.pmf_stabilized = stabilized(p1, p2, r.pmf_partial);
    r.mixing_stabilized = stabilized(m1, m2, r.mixing_partial);
    r.both_finite_verdict = r.pmf_stabilized && r.mixing_stabilized;
    r.agree = r.pmf_stabilized == r.mixing_stabilized;
    return r;
}

InDegreeRegime in_degree_regime(double alpha, double beta, double delta) {
    if (!(alpha > 0.0 && beta > 1.0 && delta > 0.0)) throw InvalidParameter("in_degree_regime: invalid parameters");
    if (std::abs(beta - 2.0) < 1e-12) return {RowRule::log_fraction(delta), delta * alpha, "beta=2"};
    if (beta > 2.0) return {RowRule::fraction(delta), delta * alpha * (beta - 1.0) / (beta - 2.0), "beta>2"};
    return {RowRule::power_fraction(delta), delta * std::pow(alpha, beta - 1.0) * (beta - 1.0) / (2.0 - beta),
            "1<beta<2"};
}

}  // namespace exchgraph::degrees
