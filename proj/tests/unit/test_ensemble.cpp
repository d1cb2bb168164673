#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "exchgraph/ensemble.hpp"
#include "exchgraph/error.hpp"
#include "exchgraph/parallel.hpp"
#include "exchgraph/special.hpp"
#include "exchgraph/stats.hpp"

using namespace exchgraph;

namespace {

EnsembleConfig make(long n, MixingSpec spec, RowRule rows = RowRule::square(), long replicas = 1,
                    Variant v = Variant::PartiallyExchangeable) {
    EnsembleConfig c;
    c.n = n;
    c.rows = rows;
    c.mixing = std::move(spec);
    c.variant = v;
    c.master_seed = 12345;
    c.replicas = replicas;
    return c;
}

}  // namespace

TEST_SUITE("ensemble") {
    TEST_CASE("extreme biases") {
        const auto z = sample_graph(make(17, MixingSpec::dirac(0.0), RowRule::explicit_rows(5)), 0);
        CHECK(z.matrix.popcount() == 0);
        CHECK(z.matrix.rows() == 5);
        const auto o = sample_graph(make(3, MixingSpec::dirac(3.0), RowRule::explicit_rows(2)), 0);
        CHECK(o.matrix == BitMatrix::ones(2, 3));
    }

    TEST_CASE("row rules") {
        CHECK(resolve_rows(make(100, MixingSpec::dirac(1.0))) == 100);
        CHECK(resolve_rows(make(100, MixingSpec::dirac(1.0), RowRule::fraction(0.25))) == 25);
        CHECK(resolve_rows(make(10000, MixingSpec::power_law(1.0, 1.5), RowRule::power_fraction(1.0))) == 100);
        CHECK(resolve_rows(make(1000, MixingSpec::dirac(1.0), RowRule::log_fraction(1.0))) ==
              static_cast<long>(std::floor(1000 / std::log(1000.0))));
        CHECK(resolve_rows(make(10, MixingSpec::dirac(1.0), RowRule::explicit_rows(7))) == 7);
        CHECK_THROWS_AS(validate(make(10, MixingSpec::dirac(1.0), RowRule::explicit_rows(11))), InvalidParameter);
        CHECK_THROWS_AS(validate(make(10, MixingSpec::power_law(1.0, 3.0), RowRule::power_fraction(1.0))),
                        InvalidParameter);
    }

    TEST_CASE("replicas are deterministic and independent of scheduling") {
        const auto cfg = make(200, MixingSpec::power_law(1.0, 2.5), RowRule::square(), 16);
        const auto a = parallel_map(16, 1, [&](long r) { return sample_graph(cfg, r).matrix; });
        const auto b = parallel_map(16, 4, [&](long r) { return sample_graph(cfg, r).matrix; });
        for (long r = 0; r < 16; ++r) CHECK(a[r] == b[r]);
        CHECK_FALSE(a[0] == a[1]);
        CHECK(sample_graph(cfg, 3).seed_used == sample_graph(cfg, 3).seed_used);
    }

    TEST_CASE("sample_out_degrees mirrors sample_graph") {
        for (auto v : {Variant::PartiallyExchangeable, Variant::CompletelyExchangeable}) {
            const auto cfg = make(300, MixingSpec::power_law(1.0, 1.8), RowRule::square(), 5, v);
            for (long r = 0; r < 5; ++r) CHECK(sample_out_degrees(cfg, r) == out_degrees(sample_graph(cfg, r)));
        }
        const auto h = make(300, MixingSpec::hierarchical(1.0, 2.5, 3.5), RowRule::square(), 3, Variant::Hierarchical);
        for (long r = 0; r < 3; ++r) CHECK(sample_out_degrees(h, r) == out_degrees(sample_graph(h, r)));
    }

    TEST_CASE("completely exchangeable draws one bias") {
        const auto cfg = make(50, MixingSpec::power_law(1.0, 2.5), RowRule::square(), 1, Variant::CompletelyExchangeable);
        CHECK(sample_graph(cfg, 0).thetas.size() == 1);
        const auto p = make(50, MixingSpec::power_law(1.0, 2.5));
        CHECK(sample_graph(p, 0).thetas.size() == 50);
    }

    TEST_CASE("edge density equals the first moment") {
        const long reps = 10000, n = 1000;
        const auto cfg = make(n, MixingSpec::power_law(1.0, 3.0), RowRule::square(), reps);
        const auto dens = parallel_map(reps, 0, [&](long r) {
            const auto d = sample_out_degrees(cfg, r);
            return static_cast<double>(std::accumulate(d.begin(), d.end(), 0L)) / (double(n) * n);
        });
        const auto s = stats::summarize(dens);
        const double mu = mixing::moment(cfg.mixing, n, 1);
        CHECK(std::abs(s.mean - mu) < 4 * s.std_error);
    }

    TEST_CASE("fill paths agree in law") {
        // per-bit and skipping fills give the same row-sum and position laws
        for (double theta : {0.05, 0.2, 0.8, 0.97}) {
            const long n = 40, reps = 40000;
            std::vector<double> sums_fast(n + 1, 0.0), sums_slow(n + 1, 0.0), pos_fast(n, 0.0), pos_slow(n, 0.0);
            Rng r1(1), r2(2);
            for (long k = 0; k < reps; ++k) {
                long c1 = 0, c2 = 0;
                std::vector<bool> row1(n, false), row2(n, false);
                fill_row(n, theta, r1, [&](long j, bool v) { row1[j] = v; });
                fill_row(n, theta, r2, [&](long j, bool v) { row2[j] = v; }, true);
                for (long j = 0; j < n; ++j) {
                    c1 += row1[j];
                    c2 += row2[j];
                    pos_fast[j] += row1[j];
                    pos_slow[j] += row2[j];
                }
                sums_fast[c1] += 1;
                sums_slow[c2] += 1;
            }
            CHECK(stats::chi_square_homogeneity({sums_fast, sums_slow}).p_value > 0.001);
            std::vector<double> binom(n + 1);
            for (long k = 0; k <= n; ++k)
                binom[k] = std::exp(special::log_binomial(n, k) + k * std::log(theta) + (n - k) * std::log1p(-theta));
            CHECK(stats::chi_square(sums_fast, binom).p_value > 0.001);
            for (long j = 0; j < n; ++j) {
                const double se = std::sqrt(theta * (1 - theta) / reps);
                CHECK(std::abs(pos_fast[j] / reps - theta) < 5 * se);
            }
        }
    }

    TEST_CASE("row_prob normalization over patterns") {
        for (long n : {1L, 4L, 9L}) {
            for (const auto& s : {MixingSpec::power_law(0.5, 2.2), MixingSpec::dirac(0.5), MixingSpec::seed_cdf(Seed::exponential(2.0))}) {
                double total = 0.0;
                for (long r = 0; r <= n; ++r) total += std::exp(special::log_binomial(n, r)) * mixing::row_prob(s, n, r);
                CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}
