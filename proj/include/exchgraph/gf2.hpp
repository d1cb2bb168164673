#pragma once
// Kernel of X^T over GF(2), the mean solution count and its exponential rate.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exchgraph/bitmatrix.hpp"
#include "exchgraph/mixing.hpp"
#include "exchgraph/seed.hpp"

namespace exchgraph {

/// A count of the form 2^e or 2^e - 1. `exact` holds the decimal digits
/// while e <= 512.
struct BigCount {
    long exponent = 0;
    bool minus_one = false;
    std::optional<std::string> exact;
    double log2 = 0.0;  // -inf for the count 0
};

struct Gf2Report {
    long m = 0;
    long n = 0;
    long rank = 0;
    long nullity_of_transpose = 0;  // m - rank
    BigCount N_solutions;           // 2^{m - rank}, zero solution included
    BigCount S_hypercycles;         // 2^{n - m} N - 1 = 2^{n - rank} - 1
};

namespace gf2 {

constexpr long kExactExponentLimit = 512;

BigCount pow2(long e, bool minus_one = false);

/// Rank of the m x n matrix by elimination on X^T (n rows of m bits) with
/// word-wide XOR.
long rank(const BitMatrix& x);
Gf2Report rank_gf2(const BitMatrix& x);

struct ExpectedSolutions {
    double value = 0.0;
    double log_value = 0.0;
    /// j in 1..n with |xi_n(j)| < 1e-12. The mean formula holds regardless.
    std::vector<long> z_set;
};

/// E N = 2^{-n} sum_{j=0}^{n} C(n, j) (1 + xi_n(j))^m, by log-sum-exp.
ExpectedSolutions expected_solutions(const MixingSpec& spec, long n, long m);

/// Theta_gamma(x) = (1/gamma) log(1 + int e^{-2xt} dF(t))
///                  - (x log x + (1-x) log(1-x) + log 2).
double theta_rate(const Seed& seed, double gamma, double x);

struct RateReport {
    double gamma = 1.0;
    std::vector<std::pair<double, double>> theta_values;  // (x, Theta_gamma(x)) on the scan grid
    double I_gamma = 0.0;
    double argmax_x = 0.0;
    double theta0 = 0.0;  // Theta_gamma(0) = (1/gamma - 1) log 2
    bool exceeds_baseline = false;
    std::optional<double> gamma_c;
};

/// Supremum over [0, 1] by a scan (1024 linear points plus log-spaced points
/// down to 1e-300) and golden-section refinement of the best linear bracket
/// to |dx| < 1e-10. exceeds_baseline compares Theta_gamma(x) - Theta_gamma(0),
/// evaluated directly, against 1e-9 |x log x + (1-x) log(1-x)|.
RateReport rate_sup(const Seed& seed, double gamma);

struct ThresholdReport {
    double gamma_c = 0.0;
    std::vector<std::pair<double, bool>> trace;  // (gamma, exceeds_baseline) in evaluation order
    bool monotone = false;                       // predicate nondecreasing in gamma over the trace
    std::vector<std::pair<double, double>> tail_ratios;  // (x, log x / int t e^{-2xt} dF)
};

/// Bisection on gamma of exceeds_baseline to |dgamma| < 1e-6. Throws
/// NoThresholdError when the seed mean is finite, when the heavy-tail ratio
/// does not decay toward 0, or when the predicate does not change sign.
ThresholdReport gamma_critical(const Seed& seed);

}  // namespace gf2
}  // namespace exchgraph
