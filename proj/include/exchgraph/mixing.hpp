#pragma once

// Mixing laws pi_n for the per-row coin bias theta.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exchgraph/rng.hpp"
#include "exchgraph/seed.hpp"

namespace exchgraph {

/// pi_n = delta_{lambda/n}.
struct DiracMixing {
    double lambda;
};

/// pi_n(dtheta) = Z_n^{-1} theta^{-beta} 1{alpha/n < theta <= 1} dtheta.
struct PowerLawMixing {
    double alpha;
    double beta;
};

/// Piecewise-linear table of g on a user grid. Constant extension outside
/// the grid. Declared bounds c1 <= g <= c2 must hold at every knot.
struct GTable {
    std::vector<std::pair<double, double>> points;  // (tau, g), tau increasing
    double c1 = 0.0;
    double c2 = 0.0;

    double operator()(double tau) const;
};

/// pi_n(dtheta) proportional to theta^{-beta} g(n theta) on (alpha/n, 1].
struct ModulatedPowerLawMixing {
    double alpha;
    double beta;
    GTable g;
};

/// F_n(x) = F(nx) / F(n).
struct SeedCdfMixing {
    Seed seed;
};

/// alpha ~ lambda_n proportional to alpha^{-gamma_exp} on [A, n/2], then
/// theta | alpha ~ PowerLaw(alpha, beta) at size n.
struct HierarchicalMixing {
    double A;
    double beta;
    double gamma_exp;
};

struct MixingSpec {
    std::variant<DiracMixing, PowerLawMixing, ModulatedPowerLawMixing, SeedCdfMixing, HierarchicalMixing> v;

    static MixingSpec dirac(double lambda) { return {DiracMixing{lambda}}; }
    static MixingSpec power_law(double alpha, double beta) { return {PowerLawMixing{alpha, beta}}; }
    static MixingSpec modulated(double alpha, double beta, GTable g) {
        return {ModulatedPowerLawMixing{alpha, beta, std::move(g)}};
    }
    static MixingSpec seed_cdf(Seed s) { return {SeedCdfMixing{std::move(s)}}; }
    static MixingSpec hierarchical(double A, double beta, double gamma_exp) {
        return {HierarchicalMixing{A, beta, gamma_exp}};
    }
};

namespace mixing {

/// Throws InvalidParameter when the mixing law is not defined at size n.
void validate(const MixingSpec& spec, long n);
std::string name(const MixingSpec& spec);

/// The power-law exponent of PowerLaw and ModulatedPowerLaw specs.
std::optional<double> power_law_beta(const MixingSpec& spec);

/// True when pi_n is a point mass; returns its location.
std::optional<double> point_mass(const MixingSpec& spec, long n);

double sample_theta(const MixingSpec& spec, long n, Rng& rng);

/// Hierarchical only: the outer draw alpha ~ lambda_n and the inner draw
/// theta ~ pi_n(. | alpha).
double sample_alpha(const HierarchicalMixing& h, long n, Rng& rng);
double sample_theta_given_alpha(const HierarchicalMixing& h, long n, double alpha, Rng& rng);

/// delta_{i,n} = int theta^i pi_n(dtheta).
double moment(const MixingSpec& spec, long n, long i);
/// pi_n((t, 1]).
double tail(const MixingSpec& spec, long n, double t);
/// xi_n(i) = int (1 - 2 theta)^i pi_n(dtheta).
double xi(const MixingSpec& spec, long n, long i);

/// Hint for the quadrature: the log-integrand has a feature at theta =
/// center with scale width.
struct Hint {
    double center;
    double width;
};

/// log int_{[lo, hi]} exp(log_h(theta)) pi_n(dtheta). log_h may return -inf.
double log_expect(const MixingSpec& spec, long n, const std::function<double(double)>& log_h, double lo = 0.0,
                  double hi = 1.0, std::span<const Hint> hints = {});

/// int theta^r (1 - theta)^{n-r} pi_n(dtheta): probability of one fixed row
/// pattern with r ones.
double row_prob(const MixingSpec& spec, long n, long r);
double log_row_prob(const MixingSpec& spec, long n, long r);

}  // namespace mixing
}  // namespace exchgraph
