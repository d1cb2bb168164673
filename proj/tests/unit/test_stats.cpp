#include <doctest.h>

#include <cmath>
#include <vector>

#include "exchgraph/stats.hpp"

using namespace exchgraph;

TEST_SUITE("stats") {
    TEST_CASE("summary") {
        const std::vector<double> x{1, 2, 3, 4};
        const auto s = stats::summarize(x);
        CHECK(s.mean == 2.5);
        CHECK(s.variance == doctest::Approx(5.0 / 3.0));
        CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
        CHECK(s.count == 4);
    }

    TEST_CASE("ks distance handles atoms") {
        // all mass at 1 against a CDF with the same atom
        const std::vector<double> x(10, 1.0);
        auto cdf = [](double v) { return v >= 1.0 ? 1.0 : 0.0; };
        auto left = [](double v) { return v > 1.0 ? 1.0 : 0.0; };
        CHECK(stats::ks_distance(x, cdf, left) == 0.0);
        const std::vector<double> u{0.1, 0.3, 0.5, 0.7, 0.9};
        CHECK(stats::ks_distance(u, [](double v) { return v; }) == doctest::Approx(0.1));
    }

    TEST_CASE("chi-square survival") {
        CHECK(stats::chi_square_sf(0.0, 3) == doctest::Approx(1.0));
        CHECK(stats::chi_square_sf(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
        CHECK(stats::chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    }

    TEST_CASE("pearson chi-square") {
        const std::vector<double> obs{25, 25, 25, 25};
        const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
        const auto r = stats::chi_square(obs, p);
        CHECK(r.statistic == 0.0);
        CHECK(r.dof == 3);
        CHECK(r.p_value == doctest::Approx(1.0));
        const std::vector<double> skew{70, 10, 10, 10};
        CHECK(stats::chi_square(skew, p).p_value < 1e-10);
    }

    TEST_CASE("homogeneity, tv and correlation") {
        const std::vector<std::vector<double>> t{{10, 20, 30}, {10, 20, 30}};
        CHECK(stats::chi_square_homogeneity(t).statistic == doctest::Approx(0.0));
        const std::vector<double> p{0.5, 0.5}, q{0.25, 0.75};
        CHECK(stats::total_variation(p, q) == doctest::Approx(0.25));
        const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
        CHECK(stats::correlation(a, b) == doctest::Approx(1.0));
        CHECK(stats::correlation(a, c) == doctest::Approx(-1.0));
    }
}
