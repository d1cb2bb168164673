#pragma once

#include <string>
#include <variant>
#include <vector>

#include "exchgraph/ensemble.hpp"
#include "exchgraph/mixing.hpp"
#include "exchgraph/seed.hpp"

namespace exchgraph {

struct PoissonLaw {
    double lambda;
};
struct PoissonMixtureLaw {
    Seed seed;
};
/// gamma/(1+gamma) (1+gamma)^{-k}
struct GeometricLaw {
    double gamma;
};
/// C(r+k-1, k) (gamma/(1+gamma))^r (1+gamma)^{-k}
struct NegativeBinomialLaw {
    double r;
    double gamma;
};
/// p_{alpha,beta}(k) = alpha^{beta-1}(beta-1)/k! int_alpha^inf t^{k-beta} e^{-t} dt
struct PowerLawTailLaw {
    double alpha;
    double beta;
};
/// (alpha+k)^{-s} / zeta(s, alpha)
struct LerchZipfLaw {
    double alpha;
    double s;
};
/// (g-1)/(g-b) p_{A,b}(k) - (b-1)/(g-b) p_{A,g}(k)
struct HierarchicalMixtureLaw {
    double A;
    double beta;
    double gamma_exp;
};

struct LimitLaw {
    std::variant<PoissonLaw, PoissonMixtureLaw, GeometricLaw, NegativeBinomialLaw, PowerLawTailLaw, LerchZipfLaw,
                 HierarchicalMixtureLaw>
        v;
};

namespace degrees {

void validate(const LimitLaw& law);
std::string name(const LimitLaw& law);

/// C(trials, k) int theta^k (1-theta)^{trials-k} pi_n(dtheta).
double mixed_binomial_pmf(const MixingSpec& spec, long n, long trials, long k);

/// P{S_{n,i} = k}.
double out_pmf_exact(const MixingSpec& spec, long n, long k);
std::vector<double> out_pmf_table(const MixingSpec& spec, long n, long kmax);

/// P{Z_{m,j} = k} = C(m,k) mu^k (1-mu)^{m-k} with mu = delta_{1,n}.
double in_pmf_exact(const MixingSpec& spec, long n, long m, long k);
std::vector<double> in_pmf_table(const MixingSpec& spec, long n, long m, long kmax);

double limit_pmf(const LimitLaw& law, long k);
/// pmf values for k = 0..kmax. Uses recurrences where available.
std::vector<double> limit_pmf_table(const LimitLaw& law, long kmax);

/// int t^k e^{-t}/k! f(t) dt by direct quadrature against the seed density.
/// Independent of the route limit_pmf takes; seeds without a density throw.
double poisson_mixture_density_route(const Seed& seed, long k);

/// alpha^{beta-1} (beta-1) k^{-beta}.
double tail_asymptote(double alpha, double beta, long k);

struct MomentTransferReport {
    double pmf_partial = 0.0;
    double mixing_partial = 0.0;
    bool pmf_stabilized = false;
    bool mixing_stabilized = false;
    bool both_finite_verdict = false;  // both stabilized
    bool agree = false;                // both stabilized or both still growing
};

/// Partial sums sum_{k<=K} k^g p_k and int_0^K t^g dF(t), each classified
/// as stabilized when over the last decade of K its relative increment is
/// below 1e-6 or its increment shrank to under half the previous decade's.
/// The classification is a heuristic; finiteness is not decidable from
/// partial sums.
MomentTransferReport moment_transfer_check(const LimitLaw& law, double gamma_ord, long K);

/// Poisson in-degree limit and the row rule that produces it for the
/// power-law mixing (alpha, beta) with scale delta.
struct InDegreeRegime {
    RowRule rows;
    double lambda;
    std::string regime;
};
InDegreeRegime in_degree_regime(double alpha, double beta, double delta);

}  // namespace degrees
}  // namespace exchgraph
