#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exchgraph/bitmatrix.hpp"
#include "exchgraph/ensemble.hpp"
#include "exchgraph/mixing.hpp"

namespace exchgraph {

struct MotifCounts {
    std::uint64_t fbl = 0;
    std::uint64_t ffl = 0;
    std::map<int, std::uint64_t> k_cycles;
    long roots = 0;
    long leaves = 0;
    long isolated = 0;
    long n_components = 0;
    bool is_connected = false;
};

/// A small directed pattern on nodes 0..k-1, e.g. "0>1,1>2,0>2".
struct SubgraphPattern {
    int k = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> out_degrees;  // m_1..m_k
    long automorphisms = 0;

    static SubgraphPattern parse(const std::string& text);
};

namespace motifs {

struct CountOptions {
    /// Upper bound on DFS expansions for k-cycle enumeration.
    std::uint64_t budget = 500'000'000;
};

/// Exact counts. The matrix is m x n with m <= n; nodes are the n columns
/// and rows past m send no edges. Cycle lengths must lie in [1, 6]; a
/// 1-cycle is a loop.
MotifCounts count_motifs(const BitMatrix& x, const std::vector<int>& ks = {}, const CountOptions& opt = {});
inline MotifCounts count_motifs(const GraphSample& s, const std::vector<int>& ks = {}, const CountOptions& opt = {}) {
    return count_motifs(s.matrix, ks, opt);
}

/// Only the fbl and ffl counts (cheap path for Monte Carlo).
std::pair<std::uint64_t, std::uint64_t> count_triangles(const BitMatrix& x);

struct RootLeafMeans {
    double root_per_sender = 0.0;    // P{i is a root}, i < m
    double leaf_per_sender = 0.0;    // P{i is a leaf}, i < m
    double leaf_per_receiver = 0.0;  // P{i is a leaf}, i >= m
    double roots_total = 0.0;
    double leaves_total = 0.0;
};

/// Root: (1-mu)^{m-1} [(1-mu) - P{S_n=0}].
/// Leaf: P{S_n=0} (1 - (1-mu)^{m-1}) for senders, 1 - (1-mu)^m otherwise.
RootLeafMeans mean_roots_leaves(const MixingSpec& spec, long n, long m);

struct MotifMeans {
    double fbl = 0.0;
    double ffl = 0.0;
    std::map<int, double> k_cycles;
    RootLeafMeans roots_leaves;
};

/// fbl = 2 C(n,3) mu^3, ffl = 6 C(n,3) delta_2 delta_1,
/// k-cycles = (k-1)! C(n,k) mu^k. Square case only (m == n).
MotifMeans mean_motifs(const MixingSpec& spec, long n, long m, const std::vector<int>& ks = {});

struct MotifVariances {
    double fbl = 0.0;
    double ffl = 0.0;
    /// The ffl variance as the closed-form display prints it, kept for
    /// comparison. It disagrees with exhaustive enumeration.
    double ffl_display = 0.0;
};

MotifVariances var_motifs(const MixingSpec& spec, long n);

/// N(H) prod_i delta_{m_i} with N(H) = n!/(n-k)!/|Aut(H)|.
double mean_subgraph(const MixingSpec& spec, long n, const SubgraphPattern& h);

struct ConnectivityBound {
    double a_n = 0.0;
    double p_connected_upper = 1.0;
};

ConnectivityBound connectivity_bound(const MixingSpec& spec, long n);

}  // namespace motifs
}  // namespace exchgraph
