#pragma once
// Reference implementations used only by tests. They are deliberately
// naive and share no code paths with the library beyond BitMatrix access
// and, where noted, row_prob weights.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "exchgraph/bitmatrix.hpp"
#include "exchgraph/mixing.hpp"
#include "exchgraph/motifs.hpp"
#include "exchgraph/rng.hpp"

namespace oracle {

using exchgraph::BitMatrix;

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13, int depth = 60) {
    struct S {
        const std::function<double(double)>& f;
        double rec(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
            const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
            return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    } s{f};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return s.rec(a, b, fa, fm, fb, whole, tol * std::max(1.0, std::abs(whole)), depth);
}

// int_a^b f, split at logarithmically spaced points so sharp features near
// a small left endpoint are resolved. Requires 0 < a < b.
inline double simpson_log(const std::function<double(double)>& f, double a, double b, double rel = 1e-12) {
    double total = 0.0;
    const int pieces = 64;
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < pieces; ++i) {
        const double u0 = la + (lb - la) * i / pieces, u1 = la + (lb - la) * (i + 1) / pieces;
        total += simpson([&](double u) { return f(std::exp(u)) * std::exp(u); }, u0, u1, rel * 1e-3);
    }
    return total;
}

// Power-law mixing density moments by direct integration.
inline double power_law_moment(double alpha, double beta, long n, double i) {
    const double lo = alpha / static_cast<double>(n);
    const double z = simpson_log([&](double t) { return std::pow(t, -beta); }, lo, 1.0);
    return simpson_log([&](double t) { return std::pow(t, i - beta); }, lo, 1.0) / z;
}

inline double power_law_expect(double alpha, double beta, long n, const std::function<double(double)>& h) {
    const double lo = alpha / static_cast<double>(n);
    const double z = simpson_log([&](double t) { return std::pow(t, -beta); }, lo, 1.0);
    return simpson_log([&](double t) { return h(t) * std::pow(t, -beta); }, lo, 1.0) / z;
}

inline std::vector<std::vector<int>> dense(const BitMatrix& x) {
    std::vector<std::vector<int>> a(x.cols(), std::vector<int>(x.cols(), 0));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) a[i][j] = x.get(i, j) ? 1 : 0;
    return a;
}

inline exchgraph::MotifCounts naive_counts(const BitMatrix& x, const std::vector<int>& ks) {
    const auto a = dense(x);
    const long n = static_cast<long>(x.cols()), m = static_cast<long>(x.rows());
    exchgraph::MotifCounts c;
    std::uint64_t f3 = 0;
    for (long p = 0; p < n; ++p)
        for (long q = 0; q < n; ++q)
            for (long r = 0; r < n; ++r) {
                if (p == q || q == r || p == r) continue;
                if (a[p][q] && a[q][r] && a[r][p]) ++f3;
                if (a[p][q] && a[q][r] && a[p][r]) ++c.ffl;
            }
    c.fbl = f3 / 3;

    for (int k : ks) {
        if (k == 1) {
            std::uint64_t loops = 0;
            for (long i = 0; i < n; ++i) loops += a[i][i];
            c.k_cycles[k] = loops;
            continue;
        }
        // Every ordered k-tuple of distinct nodes closing a cycle, then
        // divide out the k rotations.
        std::uint64_t tuples = 0;
        std::vector<long> t(k);
        std::function<void(int)> rec = [&](int d) {
            if (d == k) {
                bool ok = true;
                for (int s = 0; s < k && ok; ++s) ok = a[t[s]][t[(s + 1) % k]];
                tuples += ok;
                return;
            }
            for (long v = 0; v < n; ++v) {
                if (std::find(t.begin(), t.begin() + d, v) != t.begin() + d) continue;
                t[d] = v;
                rec(d + 1);
            }
        };
        rec(0);
        c.k_cycles[k] = tuples / k;
    }

    for (long i = 0; i < n; ++i) {
        long col_all = 0, col_off = 0, row_all = 0, row_off = 0;
        for (long j = 0; j < m; ++j) {
            col_all += a[j][i];
            if (j != i) col_off += a[j][i];
        }
        for (long j = 0; j < n; ++j) {
            row_all += a[i][j];
            if (j != i) row_off += a[i][j];
        }
        if (i < m && col_all == 0 && row_off > 0) ++c.roots;
        if (row_all == 0 && col_off > 0) ++c.leaves;
        if (row_all == 0 && col_all == 0) ++c.isolated;
    }

    std::vector<int> seen(n, 0);
    long comps = 0;
    for (long s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::vector<long> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const long v = stack.back();
            stack.pop_back();
            for (long w = 0; w < n; ++w) {
                if (!seen[w] && (a[v][w] || a[w][v])) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    c.n_components = comps;
    c.is_connected = comps == 1;
    return c;
}

// Rank over GF(2) with one byte per entry.
inline long naive_rank(const BitMatrix& x) {
    std::vector<std::vector<std::uint8_t>> a(x.rows(), std::vector<std::uint8_t>(x.cols()));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) a[i][j] = x.get(i, j);
    long r = 0;
    for (std::size_t c = 0; c < x.cols() && r < static_cast<long>(a.size()); ++c) {
        std::size_t p = r;
        while (p < a.size() && !a[p][c]) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (q != static_cast<std::size_t>(r) && a[q][c])
                for (std::size_t k = 0; k < x.cols(); ++k) a[q][k] ^= a[r][k];
        }
        ++r;
    }
    return r;
}

inline BitMatrix random_matrix(std::size_t m, std::size_t n, double p, exchgraph::Rng& rng) {
    BitMatrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.uniform() < p) x.set(i, j, true);
    return x;
}

// Calls f(matrix, probability) for every m x n 0/1 matrix, with the
// probability built from row_prob.
inline void for_each_matrix(const exchgraph::MixingSpec& spec, long m, long n,
                            const std::function<void(const BitMatrix&, double)>& f) {
    std::vector<double> rp(n + 1);
    for (long r = 0; r <= n; ++r) rp[r] = exchgraph::mixing::row_prob(spec, n, r);
    const long cells = m * n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        BitMatrix x(m, n);
        double w = 1.0;
        for (long i = 0; i < m; ++i) {
            long ones = 0;
            for (long j = 0; j < n; ++j) {
                if ((mask >> (i * n + j)) & 1U) {
                    x.set(i, j, true);
                    ++ones;
                }
            }
            w *= rp[ones];
        }
        f(x, w);
    }
}

using EdgeSet = std::vector<std::pair<long, long>>;

inline std::vector<EdgeSet> fbl_instances(long n) {
    std::vector<EdgeSet> v;
    for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b)
            for (long c = b + 1; c < n; ++c) {
                v.push_back({{a, b}, {b, c}, {c, a}});
                v.push_back({{a, c}, {c, b}, {b, a}});
            }
    return v;
}

inline std::vector<EdgeSet> ffl_instances(long n) {
    std::vector<EdgeSet> v;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c)
                if (a != b && b != c && a != c) v.push_back({{a, b}, {b, c}, {a, c}});
    return v;
}

// P{all edges present} = prod over rows of delta_{row out-degree}.
inline double edge_set_prob(const std::set<std::pair<long, long>>& e, const std::function<double(long)>& delta) {
    std::map<long, long> outdeg;
    for (auto [i, j] : e) ++outdeg[i];
    double p = 1.0;
    for (auto [i, d] : outdeg) p *= delta(d);
    return p;
}

// Var of the number of instances present, by summing covariances over all
// ordered pairs of instances.
inline double pair_variance(const std::vector<EdgeSet>& inst, const std::function<double(long)>& delta) {
    std::vector<double> p(inst.size());
    for (std::size_t s = 0; s < inst.size(); ++s)
        p[s] = edge_set_prob({inst[s].begin(), inst[s].end()}, delta);
    double v = 0.0;
    for (std::size_t s = 0; s < inst.size(); ++s) {
        for (std::size_t t = 0; t < inst.size(); ++t) {
            std::set<std::pair<long, long>> u(inst[s].begin(), inst[s].end());
            u.insert(inst[t].begin(), inst[t].end());
            v += edge_set_prob(u, delta) - p[s] * p[t];
        }
    }
    return v;
}

}  // namespace oracle
