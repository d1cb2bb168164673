#include <doctest.h>

#include <cmath>
#include <vector>

#include "exchgraph/error.hpp"
#include "exchgraph/gf2.hpp"
#include "exchgraph/parallel.hpp"
#include "exchgraph/special.hpp"
#include "exchgraph/stats.hpp"
#include "oracles.hpp"

using namespace exchgraph;

namespace {

// sum over all m x n matrices of P{X = A} 2^{nullity(A^T)}
double brute_force_mean(const MixingSpec& spec, long n, long m) {
    double e = 0.0;
    oracle::for_each_matrix(spec, m, n, [&](const BitMatrix& x, double w) {
        e += w * std::ldexp(1.0, static_cast<int>(m - oracle::naive_rank(x)));
    });
    return e;
}

// Value of gamma_c for PowerLaw(1, 1.5) computed independently in
// arbitrary precision (tests/support/gamma_c_oracle.py).
constexpr double kGammaCPowerLaw15 = 0.8575991643;

}  // namespace

TEST_SUITE("gf2") {
    TEST_CASE("kernel of small matrices") {
        const auto id = gf2::rank_gf2(BitMatrix::identity(3));
        CHECK(id.rank == 3);
        CHECK(id.nullity_of_transpose == 0);
        CHECK(id.N_solutions.exact == "1");
        CHECK(id.S_hypercycles.exact == "0");

        const auto z = gf2::rank_gf2(BitMatrix(2, 3));
        CHECK(z.rank == 0);
        CHECK(z.nullity_of_transpose == 2);
        CHECK(z.N_solutions.exact == "4");
        CHECK(z.S_hypercycles.exact == "7");
    }

    TEST_CASE("big counts") {
        CHECK(gf2::pow2(10).exact == "1024");
        CHECK(gf2::pow2(3, true).exact == "7");
        CHECK(gf2::pow2(64).exact == "18446744073709551616");
        CHECK(gf2::pow2(0, true).exact == "0");
        CHECK(std::isinf(gf2::pow2(0, true).log2));
        CHECK(gf2::pow2(512).exact.has_value());
        const auto big = gf2::pow2(600, true);
        CHECK_FALSE(big.exact.has_value());
        CHECK(big.log2 == doctest::Approx(600.0));
    }

    TEST_CASE("rank equals the naive eliminator") {
        Rng rng(17);
        for (int t = 0; t < 1000; ++t) {
            const double p = 0.02 + 0.96 * rng.uniform();
            const auto x = oracle::random_matrix(64, 64, p, rng);
            CHECK(gf2::rank(x) == oracle::naive_rank(x));
        }
        for (auto [m, n] : {std::pair<std::size_t, std::size_t>{5, 130}, {130, 70}, {1, 1}, {200, 200}}) {
            const auto x = oracle::random_matrix(m, n, 0.5, rng);
            CHECK(gf2::rank(x) == oracle::naive_rank(x));
        }
    }

    TEST_CASE("hypercycles and solutions are related exactly") {
        Rng rng(23);
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = 1 + rng.below(90), m = 1 + rng.below(n);
            const auto x = oracle::random_matrix(m, n, rng.uniform(), rng);
            const auto r = gf2::rank_gf2(x);
            CHECK(r.N_solutions.exponent == static_cast<long>(m) - r.rank);
            CHECK(r.S_hypercycles.exponent == static_cast<long>(n) - static_cast<long>(m) + r.N_solutions.exponent);
            CHECK(r.S_hypercycles.minus_one);
            CHECK(r.rank <= static_cast<long>(std::min(m, n)));
        }
    }

    TEST_CASE("mean solution count examples") {
        const auto e = gf2::expected_solutions(MixingSpec::dirac(1.0), 2, 2);
        CHECK(e.value == doctest::Approx(1.75).epsilon(1e-14));
        CHECK(e.z_set == std::vector<long>{1, 2});
        for (double theta : {0.0, 0.25, 0.6, 1.0}) {
            CHECK(gf2::expected_solutions(MixingSpec::dirac(theta), 1, 1).value == doctest::Approx(2 - theta).epsilon(1e-14));
        }
        for (const auto& s : {MixingSpec::power_law(1.0, 3.0), MixingSpec::dirac(5.0), MixingSpec::power_law(0.5, 1.5)}) {
            for (long n : {10L, 40L}) CHECK(gf2::expected_solutions(s, n, n + 3).value >= 1.0 - 1e-12);
        }
    }

    TEST_CASE("mean solution count by exhaustive enumeration") {
        for (long n = 1; n <= 3; ++n) {
            for (long m = 1; m <= 3; ++m) {
                const double theta = 0.3;
                for (const auto& s : {MixingSpec::dirac(theta * n), MixingSpec::dirac(0.5 * n), MixingSpec::power_law(1.0, 3.0)}) {
                    if (std::holds_alternative<PowerLawMixing>(s.v) && n == 1) continue;
                    const double ref = brute_force_mean(s, n, m);
                    INFO(mixing::name(s), " n=", n, " m=", m);
                    CHECK(gf2::expected_solutions(s, n, m).value == doctest::Approx(ref).epsilon(1e-8).scale(0));
                }
            }
        }
    }

    TEST_CASE("monte carlo first moment") {
        EnsembleConfig c;
        c.n = 24;
        c.mixing = MixingSpec::power_law(1.0, 3.0);
        c.master_seed = 8;
        c.replicas = 100000;
        const auto v = parallel_map(c.replicas, 0, [&](long r) {
            const auto x = sample_graph(c, r).matrix;
            return std::ldexp(1.0, static_cast<int>(c.n - gf2::rank(x)));
        });
        const auto s = stats::summarize(v);
        const double e = gf2::expected_solutions(c.mixing, c.n, c.n).value;
        CHECK(std::abs(s.mean - e) < 3 * s.std_error);
    }

    TEST_CASE("rate function values") {
        const auto sd = Seed::exponential(1.0);
        for (double g : {0.2, 0.5, 1.0}) CHECK(gf2::theta_rate(sd, g, 0.0) == doctest::Approx((1 / g - 1) * std::log(2.0)).epsilon(1e-14));
        CHECK(gf2::theta_rate(sd, 1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
        const double lambda = 1.3;
        for (double g : {0.3, 0.9}) {
            for (double x : {0.05, 0.5, 0.95, 1.0}) {
                const double h = special::xlogx(x) + special::xlogx(1 - x);
                const double ref = std::log(1 + std::exp(-2 * x * lambda)) / g - h - std::log(2.0);
                CHECK(gf2::theta_rate(Seed::dirac(lambda), g, x) == doctest::Approx(ref).epsilon(1e-12));
            }
        }
        // quadrature Laplace transforms stay finite on the scan grid
        for (const auto& s : {Seed::power_law(1.0, 1.5), Seed::pareto_tail(1.0, 0.5), Seed::gamma(0.5, 2.0)}) {
            for (const auto& [x, th] : gf2::rate_sup(s, 0.7).theta_values) CHECK(std::isfinite(th));
        }
    }

    TEST_CASE("supremum of the rate function") {
        for (int i = 1; i <= 10; ++i) {
            const auto r = gf2::rate_sup(Seed::gamma(1.0, 1.0), 0.1 * i);
            CHECK(r.exceeds_baseline);
            CHECK(r.I_gamma >= r.theta0);
            CHECK(r.argmax_x >= 0.0);
            CHECK(r.argmax_x <= 1.0);
        }
        // finite mean E T = 4: the excess is positive only for x below about exp(-E T / gamma)
        const auto pareto = gf2::rate_sup(Seed::pareto_tail(2.0, 1.5), 0.1);
        CHECK(pareto.exceeds_baseline);
        CHECK(pareto.argmax_x > 0.0);
        CHECK(pareto.argmax_x < std::exp(-4.0 / 0.1 + 2.0));
        const auto heavy = Seed::power_law(1.0, 1.5);
        CHECK_FALSE(gf2::rate_sup(heavy, 0.2).exceeds_baseline);
        CHECK(gf2::rate_sup(heavy, 0.95).exceeds_baseline);
        const auto one = gf2::rate_sup(heavy, 1.0);
        CHECK(one.I_gamma >= 0.0);
        CHECK(one.theta0 == doctest::Approx(0.0).epsilon(1e-15));
    }

    TEST_CASE("growth rate of the mean solution count") {
        const double lambda = 1.0;
        for (double g : {0.5, 0.8, 1.0}) {
            const double I = gf2::rate_sup(Seed::dirac(lambda), g).I_gamma;
            std::vector<double> err;
            for (long n : {200L, 400L, 800L}) {
                const long m = static_cast<long>(std::floor(n / g));
                err.push_back(std::abs(gf2::expected_solutions(MixingSpec::dirac(lambda), n, m).log_value / n - I));
            }
            INFO("gamma=", g);
            CHECK(err[1] < err[0]);
            CHECK(err[2] < err[1]);
            CHECK(err[2] < 0.01);
        }
    }

    TEST_CASE("threshold") {
        const auto t = gf2::gamma_critical(Seed::power_law(1.0, 1.5));
        CHECK(t.gamma_c > 0.0);
        CHECK(t.gamma_c < 1.0);
        CHECK(t.monotone);
        CHECK(t.gamma_c == doctest::Approx(kGammaCPowerLaw15).epsilon(2e-6));
        CHECK_FALSE(gf2::rate_sup(Seed::power_law(1.0, 1.5), t.gamma_c - 1e-4).exceeds_baseline);
        CHECK(gf2::rate_sup(Seed::power_law(1.0, 1.5), t.gamma_c + 1e-4).exceeds_baseline);
        CHECK_THROWS_AS(gf2::gamma_critical(Seed::power_law(1.0, 3.0)), NoThresholdError);
        CHECK_THROWS_AS(gf2::gamma_critical(Seed::gamma(2.0, 1.0)), NoThresholdError);
    }
}
