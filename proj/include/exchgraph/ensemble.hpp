#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "exchgraph/bitmatrix.hpp"
#include "exchgraph/mixing.hpp"
#include "exchgraph/rng.hpp"

namespace exchgraph {

enum class Variant { PartiallyExchangeable, CompletelyExchangeable, Hierarchical };

struct RowRule {
    enum class Kind { Square, Fraction, PowerFraction, LogFraction, Explicit };
    Kind kind = Kind::Square;
    double delta = 1.0;  // Fraction, PowerFraction, LogFraction
    long m = 0;          // Explicit

    static RowRule square() { return {}; }
    static RowRule fraction(double d) { return {Kind::Fraction, d, 0}; }
    static RowRule power_fraction(double d) { return {Kind::PowerFraction, d, 0}; }
    static RowRule log_fraction(double d) { return {Kind::LogFraction, d, 0}; }
    static RowRule explicit_rows(long m) { return {Kind::Explicit, 1.0, m}; }
};

struct EnsembleConfig {
    long n = 1;
    RowRule rows;
    MixingSpec mixing = MixingSpec::dirac(0.0);
    Variant variant = Variant::PartiallyExchangeable;
    std::uint64_t master_seed = 0;
    long replicas = 1;
};

/// m_n from the row rule:
///   Fraction       floor(delta n)
///   PowerFraction  floor(delta n^{beta-1})
///   LogFraction    floor(delta n / log n)
long resolve_rows(const EnsembleConfig& cfg);
void validate(const EnsembleConfig& cfg);

struct GraphSample {
    BitMatrix matrix;
    std::vector<double> thetas;  // one per row, or a single value for the completely exchangeable variant
    double alpha = 0.0;          // outer draw of the hierarchical variant
    long replica_index = 0;
    std::uint64_t seed_used = 0;
};

GraphSample sample_graph(const EnsembleConfig& cfg, long replica_index);

/// Row sums of the replica's matrix without materializing it. Consumes the
/// random stream exactly like sample_graph, so the result equals
/// out_degrees(sample_graph(cfg, replica_index)).
std::vector<long> sample_out_degrees(const EnsembleConfig& cfg, long replica_index);

std::vector<long> out_degrees(const BitMatrix& m);
std::vector<long> in_degrees(const BitMatrix& m);
inline std::vector<long> out_degrees(const GraphSample& s) { return out_degrees(s.matrix); }
inline std::vector<long> in_degrees(const GraphSample& s) { return in_degrees(s.matrix); }

/// Fill a length-n Bernoulli(theta) row. Small theta skips geometric gaps
/// between ones, large theta skips gaps between zeros, the middle range
/// draws each bit. `force_per_bit` selects the plain per-bit path for any
/// theta (used to test that the paths agree in law).
template <class Sink>
void fill_row(long n, double theta, Rng& rng, Sink&& set_bit, bool force_per_bit = false);

std::string variant_name(Variant v);

namespace detail {

// Positions of successes in n Bernoulli(p) trials by geometric skipping.
template <class F>
void skip_fill(long n, double p, Rng& rng, F&& hit) {
    if (p <= 0.0) return;
    const double log_q = std::log1p(-p);
    long j = -1;
    for (;;) {
        const double g = std::floor(std::log(rng.uniform_open()) / log_q);
        if (g >= static_cast<double>(n - j - 1)) return;
        j += static_cast<long>(g) + 1;
        hit(j);
    }
}

}  // namespace detail

template <class Sink>
void fill_row(long n, double theta, Rng& rng, Sink&& set_bit, bool force_per_bit) {
    if (force_per_bit || (theta > 0.25 && theta < 0.75)) {
        for (long j = 0; j < n; ++j) {
            if (rng.uniform() < theta) set_bit(j, true);
        }
        return;
    }
    if (theta <= 0.25) {
        detail::skip_fill(n, theta, rng, [&](long j) { set_bit(j, true); });
        return;
    }
    for (long j = 0; j < n; ++j) set_bit(j, true);
    detail::skip_fill(n, 1.0 - theta, rng, [&](long j) { set_bit(j, false); });
}

}  // namespace exchgraph
