#pragma once
// Hub statistic H_n = max_i S_{n,i} and its Frechet-type limits.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exchgraph/bitmatrix.hpp"
#include "exchgraph/ensemble.hpp"

namespace exchgraph {

long hub_statistic(const BitMatrix& x);
inline long hub_statistic(const GraphSample& s) { return hub_statistic(s.matrix); }

/// exp(-c x^{-eta}) on [0, L) and 1 from L on. L may be +inf.
struct FrechetCutoff {
    double c_eta = 1.0;
    double eta = 1.0;
    double L = std::numeric_limits<double>::infinity();

    double cdf(double x) const;
    /// P{X < x}.
    double cdf_left(double x) const;
    /// Mass of the atom at L.
    double atom() const;
};

FrechetCutoff hub_general_limit(double c_eta, double eta, double L = std::numeric_limits<double>::infinity());

/// Row count and scaling for the power-law mixing at size n.
///   beta > 2:  m_n = n,           b_n = n^{1/(beta-1)}, L = inf
///   beta = 2:  m_n = n / log n,   b_n = m_n,            L = inf
///   beta < 2:  m_n = n^{beta-1},  b_n = n,              L = 1
struct HubRegime {
    double m = 0.0;
    double b = 0.0;
    double L = std::numeric_limits<double>::infinity();
    std::string regime;
};
HubRegime hub_regime(double beta, long n);

/// F_H(x) = exp(-(alpha/x)^{beta-1}) below L, 1 from L on.
FrechetCutoff hub_limit(double alpha, double beta);
double hub_limit_cdf(double alpha, double beta, double x);

/// alpha^d Gamma(1 - d/eta), the d-th moment of exp(-(alpha/x)^eta).
double frechet_moment(double alpha, double eta, double d);
/// (beta-1)^2 alpha^2 Gamma((beta-1-d)/(beta-1)), the other candidate constant.
double printed_moment_constant(double alpha, double beta, double d);

/// Limit parameters implied by a mixing spec, when its tail is of the
/// form c (nt)^{-eta}: PowerLaw, PowerLaw seed and Pareto-tail seed.
std::optional<std::pair<double, double>> hub_tail_params(const MixingSpec& spec);

struct HubOptions {
    unsigned threads = 0;
    /// Override of the cutoff L. By default it is 1/delta^{1/eta} under a
    /// PowerFraction row rule with eta = beta - 1, and +inf otherwise.
    std::optional<double> L;
    /// Points of the reported empirical CDF.
    int grid_points = 200;
    /// H_n / n above this counts toward the atom at 1.
    double atom_threshold = 0.99;
    /// Moment order d for the scaled-mean check.
    double d = 1.0;
};

struct HubAtomTest {
    double observed = 0.0;
    double expected = 0.0;  // 1 - exp(-c L^{-eta})
    double std_error = 0.0;
    double z = 0.0;
    bool pass = false;
    /// Atom under exp(-alpha^{beta-1}(x^{1-beta} - 1)), which has none.
    double corrected_expected = 0.0;
};

struct HubMomentCheck {
    double d = 1.0;
    double mean = 0.0;  // mean of (H_n / b_n)^d
    double std_error = 0.0;
    double frechet = 0.0;
    double printed = 0.0;
    bool frechet_within_3se = false;
    bool printed_within_3se = false;
    std::string winner;  // "frechet", "printed", "both" or "neither"
};

struct HubReport {
    long n = 0;
    long m = 0;
    double b = 1.0;
    double L = std::numeric_limits<double>::infinity();
    bool has_limit = false;
    double c_eta = 0.0;
    double eta = 0.0;
    std::vector<long> hubs;
    std::vector<std::pair<double, double>> empirical_cdf;  // (x, fraction of H_n <= [x b_n])
    std::vector<double> limit_cdf;                         // matches empirical_cdf
    double ks_distance = 0.0;
    std::optional<HubAtomTest> atom;
    std::optional<HubMomentCheck> moment;
};

/// Samples the replicas, forms the empirical law of H_n / b_n with
/// b_n = m_n^{1/eta}, and measures the KS distance to the limit on [0, L).
/// The distance is the supremum over all x, which for the step function
/// x -> P{H_n <= [x b_n]} is attained at the integer jumps.
HubReport mc_hub(const EnsembleConfig& cfg, const HubOptions& opt = {});

}  // namespace exchgraph
