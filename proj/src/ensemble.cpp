#include "exchgraph/ensemble.hpp"

#include <cmath>

#include "exchgraph/error.hpp"

namespace exchgraph {

long resolve_rows(const EnsembleConfig& cfg) {
    const double n = static_cast<double>(cfg.n);
    switch (cfg.rows.kind) {
        case RowRule::Kind::Square:
            return cfg.n;
        case RowRule::Kind::Fraction:
            if (!(cfg.rows.delta > 0.0 && cfg.rows.delta <= 1.0))
                throw InvalidParameter("Fraction row rule requires 0 < delta <= 1");
            return static_cast<long>(std::floor(cfg.rows.delta * n));
        case RowRule::Kind::PowerFraction: {
            const auto beta = mixing::power_law_beta(cfg.mixing);
            if (!beta) throw InvalidParameter("PowerFraction row rule needs a power-law mixing (for beta)");
            if (!(cfg.rows.delta > 0.0)) throw InvalidParameter("PowerFraction row rule requires delta > 0");
            return static_cast<long>(std::floor(cfg.rows.delta * std::pow(n, *beta - 1.0)));
        }
        case RowRule::Kind::LogFraction:
            if (!(cfg.rows.delta > 0.0)) throw InvalidParameter("LogFraction row rule requires delta > 0");
            if (cfg.n < 2) throw InvalidParameter("LogFraction row rule requires n >= 2");
            return static_cast<long>(std::floor(cfg.rows.delta * n / std::log(n)));
        case RowRule::Kind::Explicit:
            return cfg.rows.m;
    }
    throw InvalidParameter("unknown row rule");
}

void validate(const EnsembleConfig& cfg) {
    mixing::validate(cfg.mixing, cfg.n);
    const long m = resolve_rows(cfg);
    if (m < 1) throw InvalidParameter("resolved row count m_n must be >= 1");
    if (m > cfg.n) throw InvalidParameter("resolved row count m_n = " + std::to_string(m) + " exceeds n: senders are nodes 0..m_n-1");
    if (cfg.replicas < 1) throw InvalidParameter("replicas must be >= 1");
    if (cfg.variant == Variant::Hierarchical && !std::holds_alternative<HierarchicalMixing>(cfg.mixing.v))
        throw InvalidParameter("the hierarchical variant needs a Hierarchical mixing spec");
}

namespace {

// Drives one replica: draws the biases and hands each row to fill_row.
template <class RowSink>
void run_replica(const EnsembleConfig& cfg, Rng& rng, long m, std::vector<double>& thetas, double& alpha,
                 RowSink&& row_sink) {
    const long n = cfg.n;
    switch (cfg.variant) {
        case Variant::PartiallyExchangeable:
            for (long i = 0; i < m; ++i) {
                const double th = mixing::sample_theta(cfg.mixing, n, rng);
                thetas.push_back(th);
                row_sink(i, th);
            }
            break;
        case Variant::CompletelyExchangeable: {
            const double th = mixing::sample_theta(cfg.mixing, n, rng);
            thetas.push_back(th);
            for (long i = 0; i < m; ++i) row_sink(i, th);
            break;
        }
        case Variant::Hierarchical: {
            const auto& h = std::get<HierarchicalMixing>(cfg.mixing.v);
            alpha = mixing::sample_alpha(h, n, rng);
            for (long i = 0; i < m; ++i) {
                const double th = mixing::sample_theta_given_alpha(h, n, alpha, rng);
                thetas.push_back(th);
                row_sink(i, th);
            }
            break;
        }
    }
}

}  // namespace

GraphSample sample_graph(const EnsembleConfig& cfg, long replica_index) {
    validate(cfg);
    if (replica_index < 0 || replica_index >= cfg.replicas) throw InvalidParameter("replica index out of range");
    const long m = resolve_rows(cfg);
    GraphSample s;
    s.replica_index = replica_index;
    s.seed_used = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(replica_index), StreamTag::Graph);
    s.matrix = BitMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(cfg.n));
    s.thetas.reserve(cfg.variant == Variant::CompletelyExchangeable ? 1 : m);
    Rng rng(s.seed_used);
    run_replica(cfg, rng, m, s.thetas, s.alpha, [&](long i, double th) {
        fill_row(cfg.n, th, rng, [&](long j, bool v) { s.matrix.set(i, j, v); });
    });
    return s;
}

std::vector<long> sample_out_degrees(const EnsembleConfig& cfg, long replica_index) {
    validate(cfg);
    if (replica_index < 0 || replica_index >= cfg.replicas) throw InvalidParameter("replica index out of range");
    const long m = resolve_rows(cfg);
    std::vector<long> deg(m, 0);
    std::vector<double> thetas;
    double alpha = 0.0;
    Rng rng(mix_seed(cfg.master_seed, static_cast<std::uint64_t>(replica_index), StreamTag::Graph));
    run_replica(cfg, rng, m, thetas, alpha, [&](long i, double th) {
        long c = 0;
        fill_row(cfg.n, th, rng, [&](long, bool v) { c += v ? 1 : -1; });
        deg[i] = c;
    });
    return deg;
}

std::vector<long> out_degrees(const BitMatrix& m) {
    std::vector<long> d(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) d[i] = static_cast<long>(m.row_popcount(i));
    return d;
}

std::vector<long> in_degrees(const BitMatrix& m) {
    std::vector<long> d(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        for (std::size_t w = 0; w < r.size(); ++w) {
            BitMatrix::Word bits = r[w];
            while (bits) {
                d[w * BitMatrix::kBits + std::countr_zero(bits)] += 1;
                bits &= bits - 1;
            }
        }
    }
    return d;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::PartiallyExchangeable:
            return "PartiallyExchangeable";
        case Variant::CompletelyExchangeable:
            return "CompletelyExchangeable";
        case Variant::Hierarchical:
            return "Hierarchical";
    }
    return "?";
}

}  // namespace exchgraph
