#pragma once

// Seed distributions F on [0, inf). A seed builds the mixing law through
// F_n(x) = F(nx) / F(n), and it is also the mixing law of the Poisson limit
// of the out-degree.

#include <string>
#include <variant>

namespace exchgraph {

struct DiracSeed {
    double t;
};

/// Exponential with rate gamma.
struct ExponentialSeed {
    double gamma;
};

/// Gamma with shape r and rate gamma.
struct GammaSeed {
    double r;
    double gamma;
};

/// f(x) = 1/(Gamma(s) Phi(1,s,alpha)) int_0^inf exp(-x(e^tau - 1)) tau^{s-1} e^{-tau(alpha-1)} dtau.
struct LerchSeed {
    double alpha;
    double s;
};

/// 1 - F(x) = alpha^eta / (alpha + x)^eta.
struct ParetoTailSeed {
    double alpha;
    double eta;
};

/// F(x) = 1 - (alpha/x)^{beta-1} for x > alpha.
struct PowerLawSeed {
    double alpha;
    double beta;
};

struct Seed {
    std::variant<DiracSeed, ExponentialSeed, GammaSeed, LerchSeed, ParetoTailSeed, PowerLawSeed> v;

    static Seed dirac(double t) { return {DiracSeed{t}}; }
    static Seed exponential(double gamma) { return {ExponentialSeed{gamma}}; }
    static Seed gamma(double r, double rate) { return {GammaSeed{r, rate}}; }
    static Seed lerch(double alpha, double s) { return {LerchSeed{alpha, s}}; }
    static Seed pareto_tail(double alpha, double eta) { return {ParetoTailSeed{alpha, eta}}; }
    static Seed power_law(double alpha, double beta) { return {PowerLawSeed{alpha, beta}}; }
};

namespace seed {

void validate(const Seed& s);
std::string name(const Seed& s);

bool has_density(const Seed& s);
/// Left end of the support.
double support_min(const Seed& s);

double cdf(const Seed& s, double x);
double survival(const Seed& s, double x);
/// log f(x); -inf outside the support. Throws for the Dirac seed.
double log_density(const Seed& s, double x);

/// F^{-1}(v) for v in [0, 1). Closed form where available, otherwise
/// bisection on x to 1e-12 within [0, hi]. The Lerch seed is not samplable.
double quantile(const Seed& s, double v, double hi);

/// Mean of F, +inf when it diverges. Decided analytically.
double mean(const Seed& s);

/// 1 - int e^{-s t} dF(t), evaluated without cancellation for small s.
double one_minus_laplace(const Seed& s, double sarg);
double laplace(const Seed& s, double sarg);
/// int t e^{-s t} dF(t).
double t_laplace(const Seed& s, double sarg);

namespace detail {
/// log of the Lerch weight c(tau) = tau^{s-1} e^{-tau(alpha-1)} / (Gamma(s) Phi(1,s,alpha)).
double lerch_log_weight(const LerchSeed& l, double tau);
}  // namespace detail

}  // namespace seed
}  // namespace exchgraph
