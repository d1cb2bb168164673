#include "exchgraph/hub.hpp"

#include <algorithm>
#include <cmath>

#include "exchgraph/error.hpp"
#include "exchgraph/parallel.hpp"

namespace exchgraph {

long hub_statistic(const BitMatrix& x) {
    long h = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) h = std::max(h, static_cast<long>(x.row_popcount(i)));
    return h;
}

double FrechetCutoff::cdf(double x) const {
    if (x >= L) return 1.0;
    if (x <= 0.0) return 0.0;
    return std::exp(-c_eta * std::pow(x, -eta));
}

double FrechetCutoff::cdf_left(double x) const {
    if (x > L) return 1.0;
    if (x <= 0.0) return 0.0;
    return std::exp(-c_eta * std::pow(x, -eta));
}

double FrechetCutoff::atom() const {
    if (!std::isfinite(L)) return 0.0;
    return -std::expm1(-c_eta * std::pow(L, -eta));
}

FrechetCutoff hub_general_limit(double c_eta, double eta, double L) {
    if (!(c_eta > 0.0) || !(eta > 0.0) || !(L > 0.0))
        throw InvalidParameter("hub limit needs c_eta > 0, eta > 0 and L > 0");
    return {c_eta, eta, L};
}

HubRegime hub_regime(double beta, long n) {
    if (!(beta > 1.0)) throw InvalidParameter("hub regime needs beta > 1");
    if (n < 2) throw InvalidParameter("hub regime needs n >= 2");
    const double nd = static_cast<double>(n);
    HubRegime r;
    if (beta > 2.0) {
        r.m = nd;
        r.b = std::pow(nd, 1.0 / (beta - 1.0));
        r.regime = "beta>2";
    } else if (beta == 2.0) {
        r.m = nd / std::log(nd);
        r.b = r.m;
        r.regime = "beta=2";
    } else {
        r.m = std::pow(nd, beta - 1.0);
        r.b = nd;
        r.L = 1.0;
        r.regime = "1<beta<2";
    }
    return r;
}

FrechetCutoff hub_limit(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 1.0)) throw InvalidParameter("hub limit needs alpha > 0 and beta > 1");
    return {std::pow(alpha, beta - 1.0), beta - 1.0,
            beta < 2.0 ? 1.0 : std::numeric_limits<double>::infinity()};
}

double hub_limit_cdf(double alpha, double beta, double x) { return hub_limit(alpha, beta).cdf(x); }

double frechet_moment(double alpha, double eta, double d) {
    if (!(alpha > 0.0) || !(d > 0.0) || !(eta > d))
        throw InvalidParameter("Frechet moment needs alpha > 0 and eta > d > 0");
    return std::pow(alpha, d) * std::tgamma(1.0 - d / eta);
}

double printed_moment_constant(double alpha, double beta, double d) {
    if (!(alpha > 0.0) || !(d > 0.0) || !(beta - 1.0 > d))
        throw InvalidParameter("moment constant needs alpha > 0 and beta - 1 > d > 0");
    return (beta - 1.0) * (beta - 1.0) * alpha * alpha * std::tgamma((beta - 1.0 - d) / (beta - 1.0));
}

std::optional<std::pair<double, double>> hub_tail_params(const MixingSpec& spec) {
    if (const auto* p = std::get_if<PowerLawMixing>(&spec.v))
        return std::pair{std::pow(p->alpha, p->beta - 1.0), p->beta - 1.0};
    if (const auto* s = std::get_if<SeedCdfMixing>(&spec.v)) {
        if (const auto* pl = std::get_if<PowerLawSeed>(&s->seed.v))
            return std::pair{std::pow(pl->alpha, pl->beta - 1.0), pl->beta - 1.0};
        if (const auto* pt = std::get_if<ParetoTailSeed>(&s->seed.v))
            return std::pair{std::pow(pt->alpha, pt->eta), pt->eta};
    }
    return std::nullopt;
}

HubReport mc_hub(const EnsembleConfig& cfg, const HubOptions& opt) {
    validate(cfg);
    if (cfg.replicas < 100) throw InvalidParameter("mc_hub needs at least 100 replicas");
    HubReport r;
    r.n = cfg.n;
    r.m = resolve_rows(cfg);
    r.hubs = parallel_map(cfg.replicas, opt.threads, [&](long i) {
        const auto deg = sample_out_degrees(cfg, i);
        return deg.empty() ? 0L : *std::max_element(deg.begin(), deg.end());
    });

    FrechetCutoff lim;
    if (const auto tp = hub_tail_params(cfg.mixing)) {
        r.has_limit = true;
        r.c_eta = tp->first;
        r.eta = tp->second;
        r.b = std::pow(static_cast<double>(r.m), 1.0 / r.eta);
        if (opt.L) {
            r.L = *opt.L;
        } else if (cfg.rows.kind == RowRule::Kind::PowerFraction) {
            const auto beta = mixing::power_law_beta(cfg.mixing);
            if (beta && std::abs(*beta - 1.0 - r.eta) < 1e-12) r.L = std::pow(cfg.rows.delta, -1.0 / r.eta);
        }
        lim = hub_general_limit(r.c_eta, r.eta, r.L);
    }

    std::vector<long> sorted = r.hubs;
    std::sort(sorted.begin(), sorted.end());
    const double R = static_cast<double>(sorted.size());
    const long hmax = sorted.back();
    auto emp = [&](long h) {
        return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), h) - sorted.begin()) / R;
    };

    if (r.has_limit) {
        // On x in [h/b, (h+1)/b) the empirical side is constant at G(h) and
        // the limit is monotone, so the endpoints carry the supremum.
        double d = 0.0;
        for (long h = 0; h <= hmax; ++h) {
            const double x0 = static_cast<double>(h) / r.b;
            if (x0 >= r.L) break;
            const double x1 = std::min(static_cast<double>(h + 1) / r.b, r.L);
            const double g = emp(h);
            d = std::max({d, std::abs(g - lim.cdf(x0)), std::abs(g - lim.cdf_left(x1))});
        }
        const double xt = static_cast<double>(hmax + 1) / r.b;
        if (xt < r.L) d = std::max(d, 1.0 - lim.cdf(xt));
        r.ks_distance = d;
    }

    const int pts = std::max(opt.grid_points, 2);
    double xmax = static_cast<double>(hmax + 1) / r.b;
    if (std::isfinite(r.L)) xmax = std::max(xmax, r.L);
    for (int k = 1; k <= pts; ++k) {
        const double x = xmax * k / pts;
        r.empirical_cdf.emplace_back(x, emp(static_cast<long>(std::floor(x * r.b))));
        r.limit_cdf.push_back(r.has_limit ? lim.cdf(x) : std::nan(""));
    }

    if (r.has_limit && std::isfinite(r.L)) {
        HubAtomTest a;
        long hits = 0;
        for (long h : r.hubs) hits += static_cast<double>(h) / static_cast<double>(r.n) > opt.atom_threshold;
        a.observed = static_cast<double>(hits) / R;
        a.expected = lim.atom();
        a.std_error = std::sqrt(a.expected * (1.0 - a.expected) / R);
        a.z = a.std_error > 0.0 ? (a.observed - a.expected) / a.std_error : 0.0;
        a.pass = std::abs(a.observed - a.expected) <= 3.0 * a.std_error;
        a.corrected_expected = 0.0;
        r.atom = a;
    }

    if (r.has_limit && r.eta > opt.d) {
        HubMomentCheck mc;
        mc.d = opt.d;
        std::vector<double> v(r.hubs.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(static_cast<double>(r.hubs[i]) / r.b, opt.d);
        double s = 0.0;
        for (double x : v) s += x;
        mc.mean = s / R;
        double ss = 0.0;
        for (double x : v) ss += (x - mc.mean) * (x - mc.mean);
        mc.std_error = std::sqrt(ss / (R - 1.0) / R);
        const double alpha = std::pow(r.c_eta, 1.0 / r.eta);
        mc.frechet = frechet_moment(alpha, r.eta, opt.d);
        mc.printed = printed_moment_constant(alpha, r.eta + 1.0, opt.d);
        mc.frechet_within_3se = std::abs(mc.mean - mc.frechet) <= 3.0 * mc.std_error;
        mc.printed_within_3se = std::abs(mc.mean - mc.printed) <= 3.0 * mc.std_error;
        mc.winner = mc.frechet_within_3se ? (mc.printed_within_3se ? "both" : "frechet")
                                          : (mc.printed_within_3se ? "printed" : "neither");
        r.moment = mc;
    }
    return r;
}

}  // namespace exchgraph
