#include "exchgraph/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "exchgraph/degrees.hpp"
#include "exchgraph/error.hpp"

namespace exchgraph {

using Word = BitMatrix::Word;
constexpr std::size_t kBits = BitMatrix::kBits;

SubgraphPattern SubgraphPattern::parse(const std::string& text) {
    SubgraphPattern p;
    std::stringstream ss(text);
    std::string item;
    std::set<std::pair<int, int>> seen;
    int maxv = -1;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        if (item.empty()) continue;
        const auto gt = item.find('>');
        if (gt == std::string::npos) throw InvalidParameter("pattern edge '" + item + "' lacks '>'");
        int a, b;
        try {
            std::size_t pa = 0, pb = 0;
            a = std::stoi(item.substr(0, gt), &pa);
            b = std::stoi(item.substr(gt + 1), &pb);
            if (pa != gt || pb != item.size() - gt - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InvalidParameter("pattern edge '" + item + "' is not of the form i>j");
        }
        if (a < 0 || b < 0) throw InvalidParameter("pattern node labels must be >= 0");
        if (!seen.insert({a, b}).second) throw InvalidParameter("pattern has a duplicate edge");
        p.edges.emplace_back(a, b);
        maxv = std::max({maxv, a, b});
    }
    if (p.edges.empty()) throw InvalidParameter("pattern has no edges");
    p.k = maxv + 1;
    if (p.k > 8) throw InvalidParameter("pattern may have at most 8 nodes");

    // Weak connectivity over all labels 0..k-1.
    std::vector<int> parent(p.k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : p.edges) parent[find(a)] = find(b);
    for (int v = 0; v < p.k; ++v) {
        if (find(v) != find(0)) throw InvalidParameter("pattern is not weakly connected (labels must be 0..k-1)");
    }

    p.out_degrees.assign(p.k, 0);
    for (auto [a, b] : p.edges) ++p.out_degrees[a];

    std::vector<int> perm(p.k);
    std::iota(perm.begin(), perm.end(), 0);
    p.automorphisms = 0;
    do {
        bool ok = true;
        for (auto [a, b] : p.edges) {
            if (!seen.count({perm[a], perm[b]})) {
                ok = false;
                break;
            }
        }
        if (ok) ++p.automorphisms;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
}

namespace motifs {

namespace {

// n x n adjacency with rows past m left empty.
BitMatrix square_adjacency(const BitMatrix& x) {
    if (x.rows() > x.cols()) throw InvalidParameter("motif counting needs m <= n");
    if (x.rows() == x.cols()) return x;
    BitMatrix a(x.cols(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) std::copy(x.row(i).begin(), x.row(i).end(), a.row(i).begin());
    return a;
}

std::uint64_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

bool test_bit(std::span<const Word> r, std::size_t j) { return (r[j / kBits] >> (j % kBits)) & 1U; }

std::pair<std::uint64_t, std::uint64_t> triangles(const BitMatrix& a, const BitMatrix& at) {
    const std::size_t n = a.rows();
    std::uint64_t fbl3 = 0, ffl = 0;
    for (std::size_t u = 0; u < n; ++u) {
        const auto out_u = a.row(u);
        const auto in_u = at.row(u);
        for (std::size_t w = 0; w < out_u.size(); ++w) {
            Word bits = out_u[w];
            while (bits) {
                const std::size_t v = w * kBits + std::countr_zero(bits);
                bits &= bits - 1;
                if (v == u) continue;
                const auto out_v = a.row(v);
                const auto in_v = at.row(v);
                // fbl: u -> v -> x -> u with x not in {u, v}.
                std::uint64_t c = and_popcount(out_v, in_u);
                if (test_bit(out_v, u) && test_bit(in_u, u)) --c;
                if (test_bit(out_v, v) && test_bit(in_u, v)) --c;
                fbl3 += c;
                // ffl: u -> x -> v plus u -> v, x not in {u, v}.
                std::uint64_t f = and_popcount(out_u, in_v);
                if (test_bit(out_u, u) && test_bit(in_v, u)) --f;
                if (test_bit(out_u, v) && test_bit(in_v, v)) --f;
                ffl += f;
            }
        }
    }
    return {fbl3 / 3, ffl};
}

struct CycleCounter {
    const BitMatrix& a;
    int k;
    std::uint64_t budget;
    std::uint64_t work = 0;
    std::uint64_t count = 0;
    std::size_t start = 0;
    std::vector<Word> visited;

    void dfs(std::size_t v, int depth) {
        if (++work > budget) throw ResourceError("k-cycle enumeration exceeded its work budget");
        const auto out = a.row(v);
        if (depth == k) {
            if (test_bit(out, start)) ++count;
            return;
        }
        const std::size_t sw = start / kBits;
        for (std::size_t w = sw; w < out.size(); ++w) {
            Word cand = out[w] & ~visited[w];
            if (w == sw) cand &= ~((Word{2} << (start % kBits)) - 1);  // labels > start
            while (cand) {
                const std::size_t u = w * kBits + std::countr_zero(cand);
                cand &= cand - 1;
                visited[w] |= Word{1} << (u % kBits);
                dfs(u, depth + 1);
                visited[w] &= ~(Word{1} << (u % kBits));
            }
        }
    }
};

double choose3(double n) { return n * (n - 1.0) * (n - 2.0) / 6.0; }
double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

std::pair<std::uint64_t, std::uint64_t> count_triangles(const BitMatrix& x) {
    const BitMatrix a = square_adjacency(x);
    return triangles(a, a.transpose());
}

MotifCounts count_motifs(const BitMatrix& x, const std::vector<int>& ks, const CountOptions& opt) {
    const BitMatrix a = square_adjacency(x);
    const BitMatrix at = a.transpose();
    const std::size_t n = a.rows(), m = x.rows();
    MotifCounts c;
    std::tie(c.fbl, c.ffl) = triangles(a, at);

    for (int k : ks) {
        if (k < 1 || k > 6) throw InvalidParameter("cycle lengths must lie in [1, 6]");
        if (static_cast<double>(n) * k > static_cast<double>(opt.budget))
            throw ResourceError("k-cycle enumeration budget too small for n * k");
        if (k == 1) {
            std::uint64_t loops = 0;
            for (std::size_t i = 0; i < n; ++i) loops += a.get(i, i);
            c.k_cycles[k] = loops;
            continue;
        }
        CycleCounter cc{a, k, opt.budget, 0, 0, 0, {}};
        cc.visited.assign(a.words_per_row(), 0);
        for (std::size_t s = 0; s < n; ++s) {
            cc.start = s;
            cc.visited[s / kBits] |= Word{1} << (s % kBits);
            cc.dfs(s, 1);
            cc.visited[s / kBits] &= ~(Word{1} << (s % kBits));
        }
        c.k_cycles[k] = cc.count;
    }

    const auto out = out_degrees(a);
    const auto in = in_degrees(a);
    for (std::size_t i = 0; i < n; ++i) {
        const long loop = a.get(i, i) ? 1 : 0;
        if (i < m && in[i] == 0 && out[i] - loop >= 1) ++c.roots;
        if (out[i] == 0 && in[i] - loop >= 1) ++c.leaves;
        if (out[i] == 0 && in[i] == 0) ++c.isolated;
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    long components = static_cast<long>(n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto r = a.row(i);
        for (std::size_t w = 0; w < r.size(); ++w) {
            Word bits = r[w];
            while (bits) {
                const std::size_t j = w * kBits + std::countr_zero(bits);
                bits &= bits - 1;
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj) {
                    parent[ri] = rj;
                    --components;
                }
            }
        }
    }
    c.n_components = components;
    c.is_connected = components == 1;
    return c;
}

RootLeafMeans mean_roots_leaves(const MixingSpec& spec, long n, long m) {
    if (m < 1 || m > n) throw InvalidParameter("roots/leaves need 1 <= m <= n");
    const double mu = mixing::moment(spec, n, 1);
    const double p0 = degrees::out_pmf_exact(spec, n, 0);
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    RootLeafMeans r;
    const double q_m1 = std::pow(1.0 - mu, md - 1.0);
    r.root_per_sender = q_m1 * std::max(0.0, (1.0 - mu) - p0);
    r.leaf_per_sender = p0 * (1.0 - q_m1);
    r.leaf_per_receiver = 1.0 - std::pow(1.0 - mu, md);
    r.roots_total = md * r.root_per_sender;
    r.leaves_total = md * r.leaf_per_sender + (nd - md) * r.leaf_per_receiver;
    return r;
}

MotifMeans mean_motifs(const MixingSpec& spec, long n, long m, const std::vector<int>& ks) {
    if (m != n) throw InvalidParameter("cycle and triangle means are defined for the square case only");
    const double nd = static_cast<double>(n);
    const double d1 = mixing::moment(spec, n, 1), d2 = mixing::moment(spec, n, 2);
    MotifMeans r;
    r.fbl = 2.0 * choose3(nd) * d1 * d1 * d1;
    r.ffl = 6.0 * choose3(nd) * d2 * d1;
    for (int k : ks) {
        if (k < 1 || k > 6) throw InvalidParameter("cycle lengths must lie in [1, 6]");
        if (k > n) {
            r.k_cycles[k] = 0.0;
            continue;
        }
        const double kd = static_cast<double>(k);
        // (k-1)! C(n,k) = n!/((n-k)! k)
        const double log_count = std::lgamma(nd + 1.0) - std::lgamma(nd - kd + 1.0) - std::log(kd);
        r.k_cycles[k] = std::exp(log_count + kd * std::log(d1));
    }
    r.roots_leaves = mean_roots_leaves(spec, n, m);
    return r;
}

MotifVariances var_motifs(const MixingSpec& spec, long n) {
    const double nd = static_cast<double>(n);
    const double d1 = mixing::moment(spec, n, 1), d2 = mixing::moment(spec, n, 2);
    const double d3 = mixing::moment(spec, n, 3), d4 = mixing::moment(spec, n, 4);
    const double c3 = choose3(nd);
    const double c3r = n >= 6 ? choose3(nd - 3.0) : 0.0;
    const double c2r = n >= 5 ? choose2(nd - 3.0) : 0.0;
    const double R = c3 - c3r;
    const double mu = d1;

    MotifVariances v;
    v.fbl = 12.0 * c3 * c2r * mu * mu * mu * mu * d2 + 6.0 * (nd - 3.0) * c3 * (mu * mu * mu * d2 + mu * mu * d2 * d2) +
            2.0 * c3 * (mu * mu * mu + d2 * d2 * d2) - 4.0 * c3 * R * std::pow(mu, 6.0);

    const double C = 60.0 * d1 * d1 * d2 * d2 + 12.0 * d2 * d2 * d2 + 24.0 * d1 * d2 * d3 + 12.0 * d1 * d1 * d4;
    const double D = 36.0 * d1 * d1 * d2 * d2;
    const double nm3 = n >= 4 ? nd - 3.0 : 0.0;

    // Overlap classes of ordered ffl pairs, summed exactly.
    const double A = 6.0 * d1 * d2 + 6.0 * d1 * d1 * d2 + 12.0 * d1 * d2 * d2 + 6.0 * d2 * d2 + 6.0 * d2 * d2 * d2;
    const double B = 30.0 * d1 * d2 * d2 + 24.0 * d1 * d1 * d2 * d2 + 12.0 * d2 * d2 * d2 + 18.0 * d1 * d1 * d3 +
                     12.0 * d1 * d2 * d3 + 6.0 * d2 * d3 + 6.0 * d3 * d3;
    v.ffl = c3 * (A + nm3 * B + c2r * C) - c3 * R * D;

    const double Ad = 6.0 * d1 * d2 + 3.0 * d1 * d1 * d2 + 6.0 * d1 * d2 * d2 + 3.0 * d2 * d2 + d2 * d2 * d2;
    const double Bd = 30.0 * d1 * d2 * d2 + 18.0 * d1 * d1 * d2 * d2 + 6.0 * d2 * d2 * d2 + 18.0 * d1 * d1 * d3 +
                      12.0 * d1 * d2 * d3 + 6.0 * d2 * d3 + 3.0 * d3 * d3;
    v.ffl_display = c3 * Ad + nm3 * c3 * Bd + c3 * c2r * C - R * D;
    return v;
}

double mean_subgraph(const MixingSpec& spec, long n, const SubgraphPattern& h) {
    if (h.k < 1 || h.k > 8 || h.automorphisms < 1) throw InvalidParameter("invalid subgraph pattern");
    if (h.k > n) return 0.0;
    const double nd = static_cast<double>(n), kd = static_cast<double>(h.k);
    double log_p = 0.0;
    for (int md : h.out_degrees) {
        if (md > 0) log_p += std::log(mixing::moment(spec, n, md));
    }
    const double log_count =
        std::lgamma(nd + 1.0) - std::lgamma(nd - kd + 1.0) - std::log(static_cast<double>(h.automorphisms));
    return std::exp(log_count + log_p);
}

ConnectivityBound connectivity_bound(const MixingSpec& spec, long n) {
    const double nd = static_cast<double>(n);
    const double mu = mixing::moment(spec, n, 1);
    const double p0 = degrees::out_pmf_exact(spec, n, 0);
    ConnectivityBound b;
    const double q1 = std::pow(1.0 - mu, nd - 1.0);
    const double q2 = std::pow(1.0 - mu, 2.0 * nd - 2.0);
    b.a_n = q1 * p0;
    if (p0 <= 0.0) {
        b.p_connected_upper = 1.0;
        return b;
    }
    const double num = q2 * p0 * p0;
    const double den = (nd - 1.0) / nd * q2 * p0 * p0 + q1 * p0 / nd;
    b.p_connected_upper = den > 0.0 ? 1.0 - num / den : 1.0;
    return b;
}

}  // namespace motifs
}  // namespace exchgraph
