// Acceptance runner. One line per criterion:
//   criterion N: PASS|FAIL <detail> (<seconds>s)
// Usage: acceptance [--criterion N]   (all criteria when omitted)

#include <CLI11.hpp>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "exchgraph/degrees.hpp"
#include "exchgraph/error.hpp"
#include "exchgraph/gf2.hpp"
#include "exchgraph/hub.hpp"
#include "exchgraph/motifs.hpp"
#include "exchgraph/parallel.hpp"
#include "exchgraph/serialize.hpp"
#include "exchgraph/special.hpp"
#include "exchgraph/stats.hpp"
#include "oracles.hpp"

using namespace exchgraph;
namespace fs = std::filesystem;

namespace {

struct Result {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "" : "!") + what);
    }
};

std::string num(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EnsembleConfig ensemble(long n, MixingSpec spec, std::uint64_t seed, long replicas, RowRule rows = RowRule::square()) {
    EnsembleConfig c;
    c.n = n;
    c.rows = rows;
    c.mixing = std::move(spec);
    c.master_seed = seed;
    c.replicas = replicas;
    return c;
}

double tv(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] - q[k]);
    return 0.5 * s;
}

// ---------------------------------------------------------------- 1

Result criterion1() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (long n = 1; n <= 3; ++n) {
        for (long m = 1; m <= 3; ++m) {
            std::vector<MixingSpec> specs{MixingSpec::dirac(0.3 * n), MixingSpec::dirac(0.5 * n)};
            if (n >= 2) specs.push_back(MixingSpec::power_law(1.0, 3.0));  // alpha < n
            for (const auto& s : specs) {
                double brute = 0.0;
                oracle::for_each_matrix(s, m, n, [&](const BitMatrix& x, double w) {
                    brute += w * std::ldexp(1.0, static_cast<int>(m - oracle::naive_rank(x)));
                });
                const double e = gf2::expected_solutions(s, n, m).value;
                worst = std::max(worst, std::abs(e - brute) / brute);
            }
        }
    }
    r.check(worst <= 1e-8, "max rel err " + num(worst, 3) + " <= 1e-8");

    // j = 0 term: Dirac at 1/2, n = m = 2
    const auto spec = MixingSpec::dirac(1.0);
    double printed = 0.0;
    for (long i = 1; i <= 2; ++i)
        printed += std::exp(special::log_binomial(2, i)) * std::pow(1 + mixing::xi(spec, 2, i), 2);
    printed /= 4.0;
    const double e = gf2::expected_solutions(spec, 2, 2).value;
    r.check(std::abs(e - 1.75) < 1e-12 && std::abs(printed - 0.75) < 1e-12,
            "Dirac 1/2: with j=0 " + num(e) + ", printed sum " + num(printed));
    const double t = elapsed(t0);
    r.check(t < 10.0, "runtime " + num(t, 3) + "s < 10s");
    return r;
}

// ---------------------------------------------------------------- 2

Result criterion2() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    const long n = 10000;
    const auto spec = MixingSpec::power_law(1.0, 3.0);
    const auto out = degrees::out_pmf_table(spec, n, 100);
    const auto lim = degrees::limit_pmf_table({PowerLawTailLaw{1.0, 3.0}}, 100);
    const double d_out = tv(out, lim);
    r.check(d_out < 0.01, "out TV " + num(d_out, 3) + " < 0.01");
    const auto in = degrees::in_pmf_table(spec, n, n, 20);
    std::vector<double> pois(21);
    for (long k = 0; k <= 20; ++k) pois[k] = std::exp(k * std::log(2.0) - 2.0 - std::lgamma(k + 1.0));
    const double d_in = tv(in, pois);
    r.check(d_in < 0.005, "in TV " + num(d_in, 3) + " < 0.005");
    const double t = elapsed(t0);
    r.check(t < 60.0, "runtime " + num(t, 3) + "s < 60s");
    return r;
}

// ---------------------------------------------------------------- 3

Result criterion3() {
    Result r;
    long geo_bad = 0;
    for (long k = 0; k <= 60; ++k)
        if (degrees::limit_pmf({GeometricLaw{1.0}}, k) != std::ldexp(1.0, -static_cast<int>(k + 1))) ++geo_bad;
    r.check(geo_bad == 0, "Geometric(1) == 2^-(k+1) on k<=60 (" + std::to_string(geo_bad) + " mismatches)");

    double nb = 0.0;
    for (const auto& [rr, g] : {std::pair{2.0, 1.0}, std::pair{0.7, 0.4}, std::pair{3.5, 2.0}}) {
        for (long k = 0; k <= 30; ++k)
            nb = std::max(nb, std::abs(degrees::limit_pmf({NegativeBinomialLaw{rr, g}}, k) -
                                       degrees::poisson_mixture_density_route(Seed::gamma(rr, g), k)));
    }
    r.check(nb <= 1e-8, "NegativeBinomial vs mixture quadrature " + num(nb, 3) + " <= 1e-8");

    double lz = 0.0;
    for (const auto& [a, s] : {std::pair{1.5, 2.0}, std::pair{2.0, 3.0}, std::pair{1.2, 1.5}}) {
        for (long k = 0; k <= 20; ++k)
            lz = std::max(lz, std::abs(degrees::limit_pmf({LerchZipfLaw{a, s}}, k) -
                                       degrees::poisson_mixture_density_route(Seed::lerch(a, s), k)));
    }
    r.check(lz <= 1e-7, "LerchZipf vs double quadrature " + num(lz, 3) + " <= 1e-7");
    return r;
}

// ---------------------------------------------------------------- 4

struct Tri {
    double fbl, ffl;
};

std::vector<Tri> triangles(const EnsembleConfig& c) {
    return parallel_map(c.replicas, 0, [&](long i) {
        const auto [a, b] = motifs::count_triangles(sample_graph(c, i).matrix);
        return Tri{double(a), double(b)};
    });
}

Result criterion4() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();

    long mismatches = 0, checked = 0;
    for (const auto& spec : {MixingSpec::dirac(2.0), MixingSpec::power_law(0.5, 1.5), MixingSpec::seed_cdf(Seed::exponential(0.7))}) {
        for (long n = 2; n <= 7; ++n) {
            const auto c = ensemble(n, spec, 500 + n, 1000);
            const auto bad = parallel_map(c.replicas, 0, [&](long i) {
                const auto x = sample_graph(c, i).matrix;
                const std::vector<int> ks{1, 2, 3, 4, 5, 6};
                const auto a = motifs::count_motifs(x, ks), b = oracle::naive_counts(x, ks);
                return a.fbl != b.fbl || a.ffl != b.ffl || a.k_cycles != b.k_cycles || a.roots != b.roots ||
                       a.leaves != b.leaves || a.isolated != b.isolated || a.n_components != b.n_components;
            });
            for (bool b : bad) mismatches += b;
            checked += c.replicas;
        }
    }
    r.check(mismatches == 0, "oracle mismatches " + std::to_string(mismatches) + "/" + std::to_string(checked));

    {
        const auto c = ensemble(100, MixingSpec::power_law(1.0, 3.0), 41, 10000);
        const auto t = triangles(c);
        std::vector<double> fb, ff;
        for (const auto& x : t) {
            fb.push_back(x.fbl);
            ff.push_back(x.ffl);
        }
        const auto mm = motifs::mean_motifs(c.mixing, c.n, c.n);
        const auto sf = stats::summarize(fb), sg = stats::summarize(ff);
        const double zf = (sf.mean - mm.fbl) / sf.std_error, zg = (sg.mean - mm.ffl) / sg.std_error;
        r.check(std::abs(zf) < 3, "fbl mean z " + num(zf, 3));
        r.check(std::abs(zg) < 3, "ffl mean z " + num(zg, 3));
    }
    {
        // the variance estimator of a heavy-tailed count has its own SE of a few
        // percent at 1e5 replicas; 1e6 keeps the 5% band near 3 SE
        const auto c = ensemble(100, MixingSpec::power_law(1.0, 4.0), 42, 1000000);
        const auto t = triangles(c);
        std::vector<double> fb, ff;
        for (const auto& x : t) {
            fb.push_back(x.fbl);
            ff.push_back(x.ffl);
        }
        const auto vv = motifs::var_motifs(c.mixing, c.n);
        // SE of the sample variance from the fourth central moment
        auto var_se = [](const std::vector<double>& v, double var) {
            const double mean = stats::summarize(v).mean;
            double m4 = 0.0;
            for (double x : v) m4 += std::pow(x - mean, 4);
            m4 /= static_cast<double>(v.size());
            return std::sqrt((m4 - var * var) / static_cast<double>(v.size()));
        };
        const double vf = stats::summarize(fb).variance, vg = stats::summarize(ff).variance;
        const double rf = vf / vv.fbl - 1, rg = vg / vv.ffl - 1;
        r.check(std::abs(rf) < 0.05, "fbl var rel " + num(rf, 3) + " (se " + num(var_se(fb, vf) / vv.fbl, 2) + ")");
        r.check(std::abs(rg) < 0.05, "ffl var rel " + num(rg, 3) + " (se " + num(var_se(ff, vg) / vv.ffl, 2) + ")");
        const double rd = vg / vv.ffl_display - 1;
        r.notes.push_back("displayed ffl var rel " + num(rd, 3));
    }

    double worst = 0.0;
    for (const auto& spec : {MixingSpec::dirac(0.9), MixingSpec::power_law(1.0, 3.0), MixingSpec::power_law(0.5, 1.5)}) {
        double s1f = 0, s2f = 0, s1g = 0, s2g = 0;
        oracle::for_each_matrix(spec, 3, 3, [&](const BitMatrix& x, double w) {
            const auto [a, b] = motifs::count_triangles(x);
            s1f += w * a, s2f += w * double(a) * a, s1g += w * b, s2g += w * double(b) * b;
        });
        const auto v = motifs::var_motifs(spec, 3);
        worst = std::max({worst, std::abs(v.fbl - (s2f - s1f * s1f)), std::abs(v.ffl - (s2g - s1g * s1g))});
    }
    r.check(worst <= 1e-10, "n=3 exhaustive variance err " + num(worst, 3));

    const double t = elapsed(t0);
    r.check(t < 300.0, "runtime " + num(t, 3) + "s < 300s");
    return r;
}

// ---------------------------------------------------------------- 5

Result criterion5() {
    Result r;
    double worst = 0.0;
    for (double theta : {0.1, 0.3, 0.5, 0.8}) {
        const auto spec = MixingSpec::dirac(2 * theta);
        double root = 0.0;
        oracle::for_each_matrix(spec, 2, 2, [&](const BitMatrix& x, double w) {
            if (oracle::naive_counts(x, {}).roots > 0 && !x.get(0, 0) && !x.get(1, 0) && x.get(0, 1)) root += w;
        });
        const double formula = (1 - theta) * (1 - theta) * theta;
        worst = std::max({worst, std::abs(root - formula),
                          std::abs(motifs::mean_roots_leaves(spec, 2, 2).root_per_sender - root)});
    }
    r.check(worst < 1e-13, "n=m=2 root prob vs (1-t)^2 t err " + num(worst, 3));

    // rectangular n=3, m=2: the printed root display is the leaf probability
    // of a sender node and vice versa
    const auto spec = MixingSpec::dirac(0.9);
    const long n = 3, m = 2;
    double roots = 0.0, leaves = 0.0, root0 = 0.0, leaf0 = 0.0;
    oracle::for_each_matrix(spec, m, n, [&](const BitMatrix& x, double w) {
        const auto c = oracle::naive_counts(x, {});
        roots += w * c.roots;
        leaves += w * c.leaves;
        bool in0 = false, out0 = false, in_other = false, out_other = false;
        for (long i = 0; i < m; ++i) {
            in0 = in0 || x.get(i, 0);
            in_other = in_other || (i != 0 && x.get(i, 0));
        }
        for (long j = 0; j < n; ++j) {
            out0 = out0 || x.get(0, j);
            out_other = out_other || (j != 0 && x.get(0, j));
        }
        if (!in0 && out_other) root0 += w;
        if (!out0 && in_other) leaf0 += w;
    });
    const auto rl = motifs::mean_roots_leaves(spec, n, m);
    r.check(std::abs(rl.roots_total - roots) < 1e-13 && std::abs(rl.leaves_total - leaves) < 1e-13 &&
                std::abs(rl.root_per_sender - root0) < 1e-13,
            "n=3,m=2 roots " + num(roots, 6) + " leaves " + num(leaves, 6) + " match");
    const double mu = mixing::moment(spec, n, 1);
    const double printed_root = (1 - std::pow(1 - mu, m - 1)) * degrees::mixed_binomial_pmf(spec, n, n, 0);
    const double printed_leaf = std::pow(1 - mu, m) * (1 - degrees::mixed_binomial_pmf(spec, n, n - 1, 0));
    const bool transposed = std::abs(printed_root - leaf0) < 1e-13 && std::abs(printed_leaf - root0) < 1e-13 &&
                            std::abs(printed_root - root0) > 1e-3;
    r.check(transposed, "node 0: root " + num(root0, 6) + " leaf " + num(leaf0, 6) + "; printed root display " +
                            num(printed_root, 6) + " printed leaf display " + num(printed_leaf, 6) + " (transposed)");

    const auto c = ensemble(500, MixingSpec::power_law(1.0, 2.5), 55, 4000);
    const auto rs = parallel_map(c.replicas, 0, [&](long i) {
        const auto k = motifs::count_motifs(sample_graph(c, i));
        return std::pair<double, double>{double(k.roots), double(k.leaves)};
    });
    std::vector<double> ro, le;
    for (auto [a, b] : rs) {
        ro.push_back(a);
        le.push_back(b);
    }
    const auto mean = motifs::mean_roots_leaves(c.mixing, c.n, c.n);
    const auto sr = stats::summarize(ro), sl = stats::summarize(le);
    const double zr = (sr.mean - mean.roots_total) / sr.std_error, zl = (sl.mean - mean.leaves_total) / sl.std_error;
    r.check(std::abs(zr) < 3, "n=500 roots z " + num(zr, 3));
    r.check(std::abs(zl) < 3, "n=500 leaves z " + num(zl, 3));
    return r;
}

// ---------------------------------------------------------------- 6

Result criterion6() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    {
        const auto c = ensemble(10000, MixingSpec::power_law(1.0, 3.0), 61, 1000);
        const auto h = mc_hub(c);
        r.check(h.ks_distance < 0.05, "beta=3 KS " + num(h.ks_distance, 3) + " < 0.05");
    }
    {
        const auto c = ensemble(10000, MixingSpec::power_law(1.0, 1.5), 62, 1000, RowRule::power_fraction(1.0));
        const auto h = mc_hub(c);
        if (!h.atom) {
            r.check(false, "beta=1.5 atom test not run");
        } else {
            const double target = 1 - std::exp(-1.0);
            const double se = std::sqrt(target * (1 - target) / c.replicas);
            const double z = (h.atom->observed - target) / se;
            r.check(std::abs(z) < 3, "beta=1.5 atom " + num(h.atom->observed, 3) + " vs " + num(target, 4) + " z " + num(z, 3));
        }
    }
    const double t = elapsed(t0);
    r.check(t < 600.0, "runtime " + num(t, 3) + "s < 600s");
    return r;
}

// ---------------------------------------------------------------- 7

Result criterion7() {
    Result r;
    const auto c = ensemble(10000, MixingSpec::power_law(1.0, 3.0), 71, 10000);
    const auto h = mc_hub(c);
    if (!h.moment) {
        r.check(false, "moment check missing");
        return r;
    }
    const auto& m = *h.moment;
    const bool exactly_one = m.frechet_within_3se != m.printed_within_3se;
    r.check(exactly_one, "mean " + num(m.mean, 5) + " +- " + num(m.std_error, 3) + " frechet " + num(m.frechet, 5) +
                             " printed " + num(m.printed, 5) + " winner " + m.winner);
    return r;
}

// ---------------------------------------------------------------- 8

Result criterion8() {
    Result r;
    const double lambda = 1.0;
    for (double g : {0.5, 0.8, 1.0}) {
        const double I = gf2::rate_sup(Seed::dirac(lambda), g).I_gamma;
        const long n = 800, m = static_cast<long>(std::floor(n / g));
        const double v = gf2::expected_solutions(MixingSpec::dirac(lambda), n, m).log_value / n;
        r.check(std::abs(v - I) < 0.01, "gamma " + num(g, 2) + ": " + num(v, 5) + " vs I " + num(I, 5));
    }

    long misses = 0;
    for (const auto& s : {Seed::gamma(1.0, 1.0), Seed::exponential(2.0), Seed::power_law(1.0, 3.0), Seed::pareto_tail(2.0, 1.5)}) {
        for (int i = 1; i <= 10; ++i) misses += !gf2::rate_sup(s, 0.1 * i).exceeds_baseline;
    }
    r.check(misses == 0, "finite-mean seeds exceed baseline on grid (" + std::to_string(misses) + " misses)");

    try {
        const auto t1 = gf2::gamma_critical(Seed::power_law(1.0, 1.5));
        const auto t2 = gf2::gamma_critical(Seed::power_law(1.0, 1.5));
        const bool inside = t1.gamma_c > 0.0 && t1.gamma_c < 1.0;
        const bool stable = t1.gamma_c == t2.gamma_c &&
                            !gf2::rate_sup(Seed::power_law(1.0, 1.5), t1.gamma_c - 1e-5).exceeds_baseline &&
                            gf2::rate_sup(Seed::power_law(1.0, 1.5), t1.gamma_c + 1e-5).exceeds_baseline;
        r.check(inside && stable && t1.monotone, "beta=1.5 gamma_c " + num(t1.gamma_c, 8) + (t1.monotone ? " monotone" : " non-monotone"));
    } catch (const Error& e) {
        r.check(false, std::string("beta=1.5 threshold failed: ") + e.what());
    }

    bool no_threshold = false;
    try {
        gf2::gamma_critical(Seed::power_law(1.0, 3.0));
    } catch (const NoThresholdError&) {
        no_threshold = true;
    }
    r.check(no_threshold, "beta=3 no threshold");
    return r;
}

// ---------------------------------------------------------------- 9

int run_cli(const std::string& args) {
    const std::string cmd = std::string(EXCHGRAPH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::map<std::string, std::string> slurp(const fs::path& dir) {
    std::map<std::string, std::string> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream is(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        out[fs::relative(e.path(), dir).string()] = ss.str();
    }
    return out;
}

Result criterion9() {
    Result r;
    const fs::path dir = fs::temp_directory_path() / "exchgraph_acceptance_9";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const json cfg = {{"schema", "exchgraph/1"},
                      {"ensemble",
                       {{"n", 200},
                        {"mixing", {{"variant", "PowerLaw"}, {"alpha", 1.0}, {"beta", 2.5}}},
                        {"seed", 2024},
                        {"replicas", 120}}},
                      {"motifs", {{"cycle_lengths", {3, 4}}, {"patterns", {"0>1,1>2,0>2"}}}},
                      {"gf2", {{"gamma_grid", {0.5, 1.0}}}}};
    std::ofstream(dir / "config.json") << cfg.dump(2);
    long differing = 0, failures = 0, commands = 0;
    for (const std::string cmd : {"sample", "degrees", "motifs", "hub", "gf2", "report", "mc"}) {
        std::map<std::string, std::string> ref;
        for (int threads : {1, 8, 1, 3}) {
            const fs::path out = dir / cmd;
            fs::remove_all(out);
            const int rc = run_cli(cmd + " --config " + (dir / "config.json").string() + " --out " + out.string() +
                                   " --threads " + std::to_string(threads));
            if (rc != 0 && rc != 2) ++failures;
            const auto files = slurp(out);
            if (files.empty()) ++failures;
            if (ref.empty()) ref = files;
            else if (files != ref) ++differing;
        }
        ++commands;
    }
    r.check(failures == 0, std::to_string(commands) + " commands ran (" + std::to_string(failures) + " failures)");
    r.check(differing == 0, "byte-identical across runs and thread counts (" + std::to_string(differing) + " differ)");
    fs::remove_all(dir);
    return r;
}

// ---------------------------------------------------------------- 10

Result criterion10() {
    Result r;
    const long n = 32, reps = 100000;
    const auto c = ensemble(n, MixingSpec::power_law(1.0, 1.8), 1010, reps);
    struct Obs {
        std::vector<std::uint8_t> row0;  // X_{0,j}
        long s1, s2;
        long ones;
    };
    const auto obs = parallel_map(reps, 0, [&](long i) {
        const auto x = sample_graph(c, i).matrix;
        Obs o;
        o.row0.resize(n);
        for (long j = 0; j < n; ++j) o.row0[j] = x.get(0, j);
        o.s1 = static_cast<long>(x.row_popcount(1));
        o.s2 = static_cast<long>(x.row_popcount(2));
        o.ones = static_cast<long>(x.popcount());
        return o;
    });
    std::vector<std::vector<double>> table(2, std::vector<double>(n, 0.0));
    std::vector<double> s1, s2;
    double ones = 0.0;
    for (const auto& o : obs) {
        for (long j = 0; j < n; ++j) table[o.row0[j]][j] += 1;
        s1.push_back(double(o.s1));
        s2.push_back(double(o.s2));
        ones += double(o.ones);
    }
    const auto chi = stats::chi_square_homogeneity(table);
    r.check(chi.p_value > 0.01, "column symmetry chi2 " + num(chi.statistic, 4) + " dof " + num(chi.dof, 3) + " p " + num(chi.p_value, 3));
    const double rho = stats::correlation(s1, s2);
    const double se = 1.0 / std::sqrt(double(reps));
    r.check(std::abs(rho) < 4 * se, "row correlation " + num(rho, 3) + " (4 SE " + num(4 * se, 3) + ")");
    const double mu = mixing::moment(c.mixing, n, 1);
    // edges within a replica share row biases; the SE uses per-replica densities
    std::vector<double> dens;
    for (const auto& o : obs) dens.push_back(double(o.ones) / double(n * n));
    const auto sd = stats::summarize(dens);
    const double z = (sd.mean - mu) / sd.std_error;
    r.check(std::abs(z) < 4, "edge probability z " + num(z, 3));
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Result()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9, criterion10};
    bool ok = true;
    for (int i = 1; i <= 10; ++i) {
        if (only != 0 && i != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result res;
        try {
            res = all[i - 1]();
        } catch (const std::exception& e) {
            res.check(false, std::string("exception: ") + e.what());
        }
        std::string detail;
        for (const auto& s : res.notes) detail += (detail.empty() ? "" : "; ") + s;
        std::cout << "criterion " << i << ": " << (res.pass ? "PASS" : "FAIL") << " " << detail << " ("
                  << num(elapsed(t0), 3) << "s)" << std::endl;
        ok = ok && res.pass;
    }
    return ok ? 0 : 1;
}
