#pragma once

#include <span>
#include <vector>

namespace exchgraph::stats {

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double std_error = 0.0;
    long count = 0;
};

/// Two-pass mean and variance in index order.
Summary summarize(std::span<const double> xs);

/// Kolmogorov-Smirnov distance between the empirical CDF of xs and a
/// CDF given on the same points. `cdf_left(x)` is P{X < x} and `cdf(x)` is
/// P{X <= x}, so distributions with atoms are handled exactly.
template <class Cdf, class CdfLeft>
double ks_distance(std::vector<double> xs, const Cdf& cdf, const CdfLeft& cdf_left);

/// KS distance for a continuous reference CDF.
template <class Cdf>
double ks_distance(std::vector<double> xs, const Cdf& cdf) {
    return ks_distance(std::move(xs), cdf, cdf);
}

/// Upper tail P{chi2_dof > x}.
double chi_square_sf(double x, double dof);

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Pearson chi-square of observed counts against expected probabilities.
/// Cells with expected count below `min_expected` are pooled into their
/// neighbour. `fitted` parameters reduce the degrees of freedom.
ChiSquare chi_square(std::span<const double> observed, std::span<const double> probs, double min_expected = 5.0,
                     int fitted = 0);

/// Chi-square test of homogeneity for a rows x cols contingency table.
ChiSquare chi_square_homogeneity(const std::vector<std::vector<double>>& table);

double total_variation(std::span<const double> p, std::span<const double> q);

/// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace exchgraph::stats

#include <algorithm>
#include <cmath>

namespace exchgraph::stats {

template <class Cdf, class CdfLeft>
double ks_distance(std::vector<double> xs, const Cdf& cdf, const CdfLeft& cdf_left) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        const double below = static_cast<double>(i) / n;  // F_emp(x-)
        const double at = static_cast<double>(j) / n;     // F_emp(x)
        d = std::max({d, std::abs(at - cdf(xs[i])), std::abs(below - cdf_left(xs[i]))});
        i = j;
    }
    return d;
}

}  // namespace exchgraph::stats
