#include "exchgraph/stats.hpp"

#include <cmath>

#include "exchgraph/error.hpp"
#include "exchgraph/special.hpp"

namespace exchgraph::stats {

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.count = static_cast<long>(xs.size());
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0, corr = 0.0;
        for (double x : xs) {
            ss += (x - s.mean) * (x - s.mean);
            corr += x - s.mean;
        }
        const double n = static_cast<double>(xs.size());
        s.variance = (ss - corr * corr / n) / (n - 1.0);
        s.std_error = std::sqrt(s.variance / n);
    }
    return s;
}

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0)) throw InvalidParameter("chi-square needs dof > 0");
    if (x <= 0.0) return 1.0;
    return special::gamma_q(0.5 * dof, 0.5 * x);
}

ChiSquare chi_square(std::span<const double> observed, std::span<const double> probs, double min_expected, int fitted) {
    if (observed.size() != probs.size() || observed.empty()) throw InvalidParameter("chi_square: size mismatch");
    double total = 0.0;
    for (double o : observed) total += o;
    // Pool consecutive cells until each pooled cell reaches min_expected.
    std::vector<double> obs, exp;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += probs[i] * total;
        if (e_acc >= min_expected) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (o_acc > 0.0 || e_acc > 0.0) {
        if (exp.empty()) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
        } else {
            obs.back() += o_acc;
            exp.back() += e_acc;
        }
    }
    ChiSquare r;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (exp[i] > 0.0) r.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    }
    r.dof = static_cast<double>(obs.size()) - 1.0 - fitted;
    r.p_value = r.dof > 0.0 ? chi_square_sf(r.statistic, r.dof) : 1.0;
    return r;
}

ChiSquare chi_square_homogeneity(const std::vector<std::vector<double>>& table) {
    if (table.empty() || table[0].empty()) throw InvalidParameter("chi_square_homogeneity: empty table");
    const std::size_t R = table.size(), C = table[0].size();
    std::vector<double> row(R, 0.0), col(C, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
        if (table[i].size() != C) throw InvalidParameter("chi_square_homogeneity: ragged table");
        for (std::size_t j = 0; j < C; ++j) {
            row[i] += table[i][j];
            col[j] += table[i][j];
            total += table[i][j];
        }
    }
    ChiSquare r;
    std::size_t used_cols = 0;
    for (std::size_t j = 0; j < C; ++j) {
        if (col[j] <= 0.0) continue;
        ++used_cols;
        for (std::size_t i = 0; i < R; ++i) {
            const double e = row[i] * col[j] / total;
            if (e > 0.0) r.statistic += (table[i][j] - e) * (table[i][j] - e) / e;
        }
    }
    r.dof = static_cast<double>((R - 1) * (used_cols > 0 ? used_cols - 1 : 0));
    r.p_value = r.dof > 0.0 ? chi_square_sf(r.statistic, r.dof) : 1.0;
    return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    const std::size_t n = std::max(p.size(), q.size());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < p.size() ? p[i] : 0.0;
        const double b = i < q.size() ? q[i] : 0.0;
        d += std::abs(a - b);
    }
    return 0.5 * d;
}

double correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("correlation: size mismatch");
    const Summary sx = summarize(x), sy = summarize(y);
    double cov = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - sx.mean) * (y[i] - sy.mean);
    cov /= static_cast<double>(x.size()) - 1.0;
    const double denom = std::sqrt(sx.variance * sy.variance);
    return denom > 0.0 ? cov / denom : 0.0;
}

}  // namespace exchgraph::stats
