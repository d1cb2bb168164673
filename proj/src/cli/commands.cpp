#include "exchgraph/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "exchgraph/parallel.hpp"
#include "exchgraph/stats.hpp"

namespace exchgraph::cli {

namespace fs = std::filesystem;

namespace {

const char* const kCommands[] = {"sample", "degrees", "motifs", "hub", "gf2", "report", "mc"};
const char* const kSuites[] = {"degrees", "motifs", "hub", "gf2"};

json num(double d) {
    if (std::isnan(d)) return nullptr;
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    return d;
}

void set_default(json& j, const char* key, json value) {
    if (!j.contains(key) || j[key].is_null()) j[key] = std::move(value);
}

json section(const json& cfg, const char* key) { return cfg.contains(key) ? cfg.at(key) : json::object(); }

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot open '" + p.string() + "' for writing");
    os << text;
    if (!os) throw IoError("write to '" + p.string() + "' failed");
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

fs::path output_dir(const json& cfg) {
    const fs::path dir = cfg.at("output_dir").get<std::string>();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

// Shortest round-trip decimal, as used by the JSON writer.
std::string fmt(double d) {
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    return json(d).dump();
}

std::optional<LimitLaw> derived_limit(const MixingSpec& spec) {
    if (const auto* d = std::get_if<DiracMixing>(&spec.v)) return LimitLaw{PoissonLaw{d->lambda}};
    if (const auto* p = std::get_if<PowerLawMixing>(&spec.v)) return LimitLaw{PowerLawTailLaw{p->alpha, p->beta}};
    if (const auto* s = std::get_if<SeedCdfMixing>(&spec.v)) {
        if (const auto* ds = std::get_if<DiracSeed>(&s->seed.v)) return LimitLaw{PoissonLaw{ds->t}};
        return LimitLaw{PoissonMixtureLaw{s->seed}};
    }
    if (const auto* h = std::get_if<HierarchicalMixing>(&spec.v))
        return LimitLaw{HierarchicalMixtureLaw{h->A, h->beta, h->gamma_exp}};
    return std::nullopt;
}

std::optional<Seed> derived_seed(const MixingSpec& spec) {
    if (const auto* d = std::get_if<DiracMixing>(&spec.v)) return Seed::dirac(d->lambda);
    if (const auto* p = std::get_if<PowerLawMixing>(&spec.v)) return Seed::power_law(p->alpha, p->beta);
    if (const auto* s = std::get_if<SeedCdfMixing>(&spec.v)) return s->seed;
    return std::nullopt;
}

json envelope(const std::string& command, const json& cfg) {
    json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["seed"] = cfg.at("ensemble").at("seed");
    j["config"] = cfg;
    return j;
}

struct Z {
    double z = 0.0;
    bool pass = false;
};

Z z_test(double observed, double expected, double se, double zcrit) {
    if (se > 0.0) {
        const double z = (observed - expected) / se;
        return {z, std::abs(z) <= zcrit};
    }
    const bool eq = std::abs(observed - expected) <= 1e-12 * std::max(1.0, std::abs(expected));
    return {0.0, eq};
}

// Sample variance and the standard error of that estimate from the fourth
// central moment.
std::pair<double, double> variance_with_se(const std::vector<double>& xs) {
    const double R = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= R;
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = (x - mean) * (x - mean);
        m2 += d;
        m4 += d * d;
    }
    const double var = m2 / (R - 1.0);
    m2 /= R;
    m4 /= R;
    return {var, std::sqrt(std::max(m4 - m2 * m2, 0.0) / R)};
}

// ---------------------------------------------------------------- sample

Outcome cmd_sample(const json& cfg, unsigned threads) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    validate(ec);
    const auto dir = output_dir(cfg);
    const auto fmt_name = section(cfg, "sample").value("format", std::string("edges"));
    if (fmt_name != "edges" && fmt_name != "xgb1") throw InvalidParameter("sample.format must be 'edges' or 'xgb1'");
    const std::string spec_line = "spec " + cfg.at("ensemble").dump();

    auto payload = parallel_map(ec.replicas, threads, [&](long i) {
        const GraphSample s = sample_graph(ec, i);
        std::ostringstream os;
        if (fmt_name == "edges") {
            write_edge_list(os, s.matrix,
                            {"n " + std::to_string(ec.n), "m " + std::to_string(s.matrix.rows()),
                             "seed " + std::to_string(ec.master_seed), "replica " + std::to_string(i), spec_line});
        } else {
            write_binary(os, s.matrix);
        }
        return os.str();
    });

    Outcome out;
    out.summary = envelope("sample", cfg);
    out.summary["files"] = json::array();
    for (long i = 0; i < ec.replicas; ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "replica_%06ld.%s", i, fmt_name == "edges" ? "edges" : "xgb");
        write_text(dir / name, payload[i]);
        out.summary["files"].push_back(name);
    }
    write_json(dir / "sample.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- degrees

Outcome cmd_degrees(const json& cfg, unsigned) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    validate(ec);
    const auto dir = output_dir(cfg);
    const json d = section(cfg, "degrees");
    const long kmax = std::min<long>(d.value("kmax", 100L), ec.n);
    const long m = resolve_rows(ec);

    std::optional<LimitLaw> law;
    if (d.contains("limit") && !d["limit"].is_null()) law = parse_as<LimitLaw>(d["limit"], "degrees.limit");
    else law = derived_limit(ec.mixing);

    const auto exact = degrees::out_pmf_table(ec.mixing, ec.n, kmax);
    std::vector<double> limit;
    if (law) limit = degrees::limit_pmf_table(*law, kmax);

    std::ostringstream csv;
    csv << "k,exact,limit,abs_diff\n";
    for (long k = 0; k <= kmax; ++k) {
        const double l = law ? limit[k] : std::nan("");
        csv << k << ',' << fmt(exact[k]) << ',' << fmt(l) << ',' << fmt(std::abs(exact[k] - l)) << '\n';
    }
    write_text(dir / "degrees_out.csv", csv.str());

    const double mu = mixing::moment(ec.mixing, ec.n, 1);
    const double lam_in = static_cast<double>(m) * mu;
    const auto in_exact = degrees::in_pmf_table(ec.mixing, ec.n, m, kmax);
    const auto in_limit = degrees::limit_pmf_table(LimitLaw{PoissonLaw{lam_in}}, kmax);
    std::ostringstream csv_in;
    csv_in << "k,exact,limit,abs_diff\n";
    for (long k = 0; k <= kmax; ++k)
        csv_in << k << ',' << fmt(in_exact[k]) << ',' << fmt(in_limit[k]) << ',' << fmt(std::abs(in_exact[k] - in_limit[k]))
               << '\n';
    write_text(dir / "degrees_in.csv", csv_in.str());

    Outcome out;
    out.summary = envelope("degrees", cfg);
    json& r = out.summary["result"];
    r["n"] = ec.n;
    r["m"] = m;
    r["mu"] = mu;
    r["kmax"] = kmax;
    r["out"] = {{"csv", "degrees_out.csv"}, {"exact_mass", num(std::accumulate(exact.begin(), exact.end(), 0.0))}};
    if (law) {
        r["out"]["limit"] = *law;
        r["out"]["tv_distance"] = stats::total_variation(exact, limit);
    } else {
        r["out"]["limit"] = nullptr;
    }
    r["in"] = {{"csv", "degrees_in.csv"},
               {"limit", LimitLaw{PoissonLaw{lam_in}}},
               {"tv_distance", stats::total_variation(in_exact, in_limit)}};
    if (d.contains("moment_transfer") && law) {
        const json& mt = d["moment_transfer"];
        r["moment_transfer"] =
            degrees::moment_transfer_check(*law, mt.value("order", 1.0), mt.value("K", 100000L));
    }
    write_json(dir / "degrees.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- motifs

std::vector<int> cycle_lengths(const json& m) {
    std::vector<int> ks = m.value("cycle_lengths", std::vector<int>{3});
    for (int k : ks)
        if (k < 1 || k > 6) throw InvalidParameter("motifs.cycle_lengths entries must lie in [1, 6]");
    return ks;
}

json summary_json(const std::vector<double>& xs) {
    const auto s = stats::summarize(xs);
    return {{"mean", s.mean}, {"variance", s.variance}, {"std_error", s.std_error}, {"count", s.count}};
}

Outcome cmd_motifs(const json& cfg, unsigned threads) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    validate(ec);
    const auto dir = output_dir(cfg);
    const json mj = section(cfg, "motifs");
    const auto ks = cycle_lengths(mj);
    const long m = resolve_rows(ec);

    const auto counts = parallel_map(ec.replicas, threads, [&](long i) {
        return motifs::count_motifs(sample_graph(ec, i).matrix, ks);
    });

    auto column = [&](auto get) {
        std::vector<double> v;
        for (const auto& c : counts) v.push_back(static_cast<double>(get(c)));
        return v;
    };

    Outcome out;
    out.summary = envelope("motifs", cfg);
    json& r = out.summary["result"];
    r["n"] = ec.n;
    r["m"] = m;
    json emp;
    emp["fbl"] = summary_json(column([](const MotifCounts& c) { return c.fbl; }));
    emp["ffl"] = summary_json(column([](const MotifCounts& c) { return c.ffl; }));
    emp["roots"] = summary_json(column([](const MotifCounts& c) { return c.roots; }));
    emp["leaves"] = summary_json(column([](const MotifCounts& c) { return c.leaves; }));
    emp["isolated"] = summary_json(column([](const MotifCounts& c) { return c.isolated; }));
    emp["n_components"] = summary_json(column([](const MotifCounts& c) { return c.n_components; }));
    emp["connected_fraction"] = summary_json(column([](const MotifCounts& c) { return c.is_connected ? 1 : 0; }));
    emp["k_cycles"] = json::object();
    for (int k : ks) emp["k_cycles"][std::to_string(k)] = summary_json(column([k](const MotifCounts& c) { return c.k_cycles.at(k); }));
    r["empirical"] = emp;

    r["analytic"]["roots_leaves"] = motifs::mean_roots_leaves(ec.mixing, ec.n, m);
    if (m == ec.n) {
        r["analytic"]["means"] = motifs::mean_motifs(ec.mixing, ec.n, m, ks);
        r["analytic"]["variances"] = motifs::var_motifs(ec.mixing, ec.n);
        r["analytic"]["connectivity"] = motifs::connectivity_bound(ec.mixing, ec.n);
    }
    r["analytic"]["patterns"] = json::array();
    for (const auto& text : mj.value("patterns", std::vector<std::string>{})) {
        const auto p = SubgraphPattern::parse(text);
        r["analytic"]["patterns"].push_back({{"pattern", text},
                                             {"k", p.k},
                                             {"automorphisms", p.automorphisms},
                                             {"mean", motifs::mean_subgraph(ec.mixing, ec.n, p)}});
    }
    write_json(dir / "motifs.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- hub

HubOptions hub_options(const json& cfg, unsigned threads) {
    const json h = section(cfg, "hub");
    HubOptions o;
    o.threads = threads;
    o.grid_points = h.value("grid_points", 200);
    o.atom_threshold = h.value("atom_threshold", 0.99);
    o.d = h.value("d", 1.0);
    if (h.contains("L") && !h["L"].is_null()) o.L = h["L"].is_string() ? std::numeric_limits<double>::infinity() : h["L"].get<double>();
    return o;
}

Outcome cmd_hub(const json& cfg, unsigned threads) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    const auto dir = output_dir(cfg);
    const HubReport rep = mc_hub(ec, hub_options(cfg, threads));

    std::ostringstream csv;
    csv << "x,F_emp,F_limit\n";
    for (std::size_t i = 0; i < rep.empirical_cdf.size(); ++i)
        csv << fmt(rep.empirical_cdf[i].first) << ',' << fmt(rep.empirical_cdf[i].second) << ',' << fmt(rep.limit_cdf[i])
            << '\n';
    write_text(dir / "hub_cdf.csv", csv.str());

    Outcome out;
    out.summary = envelope("hub", cfg);
    out.summary["result"] = rep;
    out.summary["result"]["csv"] = "hub_cdf.csv";
    write_json(dir / "hub.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- gf2

json threshold_verdict(const Seed& seed) {
    try {
        const auto t = gf2::gamma_critical(seed);
        json j = t;
        j["verdict"] = "threshold";
        return j;
    } catch (const NoThresholdError& e) {
        return {{"verdict", "no threshold"}, {"reason", e.what()}};
    }
}

Outcome cmd_gf2(const json& cfg, unsigned threads) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    validate(ec);
    const auto dir = output_dir(cfg);
    const json g = section(cfg, "gf2");
    const long m = resolve_rows(ec);

    const auto reports = parallel_map(ec.replicas, threads, [&](long i) { return gf2::rank_gf2(sample_graph(ec, i).matrix); });

    Outcome out;
    out.summary = envelope("gf2", cfg);
    json& r = out.summary["result"];
    r["n"] = ec.n;
    r["m"] = m;
    r["replicas"] = json::array();
    std::vector<double> nsol;
    long max_nullity = 0;
    for (const auto& rep : reports) {
        r["replicas"].push_back(rep);
        max_nullity = std::max(max_nullity, rep.nullity_of_transpose);
    }
    if (max_nullity < 1000) {
        for (const auto& rep : reports) nsol.push_back(std::ldexp(1.0, static_cast<int>(rep.nullity_of_transpose)));
        r["N_solutions_mc"] = summary_json(nsol);
    }
    if (ec.n <= g.value("exact_mean_max_n", 2000L)) r["expected_solutions"] = gf2::expected_solutions(ec.mixing, ec.n, m);

    std::optional<Seed> seed;
    if (g.contains("seed") && !g["seed"].is_null()) seed = parse_as<Seed>(g["seed"], "gf2.seed");
    else seed = derived_seed(ec.mixing);
    if (seed) {
        r["rate_seed"] = *seed;
        r["rates"] = json::array();
        const auto grid = g.value("gamma_grid", std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto rr = gf2::rate_sup(*seed, grid[i]);
            std::ostringstream csv;
            csv << "x,theta\n";
            for (auto [x, t] : rr.theta_values) csv << fmt(x) << ',' << fmt(t) << '\n';
            char name[64];
            std::snprintf(name, sizeof name, "theta_%03zu.csv", i);
            write_text(dir / name, csv.str());
            json jr = rr;
            jr["csv"] = name;
            r["rates"].push_back(jr);
        }
        if (g.value("threshold", true)) r["threshold"] = threshold_verdict(*seed);
    }
    write_json(dir / "gf2.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- report

json ratio_class(double beta) {
    if (beta < 2.0)
        return {{"class", "n^{beta-1}"}, {"exponent", beta - 1.0}, {"display", "n^{" + fmt(beta - 1.0) + "}"}};
    if (beta == 2.0) return {{"class", "n/(log n)^2"}, {"display", "n/(log n)^2"}};
    if (beta < 3.0)
        return {{"class", "n^{3-beta}"}, {"exponent", 3.0 - beta}, {"display", "n^{" + fmt(3.0 - beta) + "}"}};
    if (beta == 3.0) return {{"class", "log n"}, {"display", "log n"}};
    const double lambda = 3.0 * (beta - 2.0) * (beta - 2.0) / ((beta - 3.0) * (beta - 1.0));
    return {{"class", "lambda constant"}, {"lambda", lambda}, {"display", fmt(lambda)}};
}

Outcome cmd_report(const json& cfg, unsigned) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    const auto* pl = std::get_if<PowerLawMixing>(&ec.mixing.v);
    if (!pl) throw InvalidParameter("report needs a PowerLaw mixing");
    mixing::validate(ec.mixing, ec.n);
    const auto dir = output_dir(cfg);
    const double a = pl->alpha, b = pl->beta, nd = static_cast<double>(ec.n);
    const long n = ec.n;

    Outcome out;
    out.summary = envelope("report", cfg);
    json& r = out.summary["result"];
    r["alpha"] = a;
    r["beta"] = b;
    r["n"] = n;

    const double mu = mixing::moment(ec.mixing, n, 1);
    double approx;
    std::string regime;
    if (b > 2.0) {
        approx = a * (b - 1.0) / ((b - 2.0) * nd);
        regime = "beta>2: alpha(beta-1)/((beta-2) n)";
    } else if (b == 2.0) {
        approx = a * std::log(nd) / nd;
        regime = "beta=2: alpha log(n)/n";
    } else {
        approx = std::pow(a, b - 1.0) * (b - 1.0) / ((2.0 - b) * std::pow(nd, b - 1.0));
        regime = "1<beta<2: alpha^{beta-1}(beta-1)/((2-beta) n^{beta-1})";
    }
    r["mu"] = {{"exact", mu}, {"approx", approx}, {"relative_gap", std::abs(approx - mu) / mu}, {"regime", regime}};

    const auto means = motifs::mean_motifs(ec.mixing, n, n, {3});
    r["triangles"] = {{"fbl_mean", means.fbl},
                      {"ffl_mean", means.ffl},
                      {"ratio_exact", means.ffl / means.fbl},
                      {"ratio_class", ratio_class(b)},
                      {"k3_cycle_mean", means.k_cycles.at(3)}};

    const auto rl = motifs::mean_roots_leaves(ec.mixing, n, n);
    json roots_class;
    if (b < 2.0) {
        const double l2 = (b - 1.0) / (2.0 - b) * std::pow(a, b - 1.0);
        roots_class = {{"class", "exp(-lambda^2 n^{2-beta})"}, {"lambda2", l2}};
    } else if (b == 2.0) {
        roots_class = {{"class", "n^{1-alpha}"}, {"exponent", 1.0 - a}};
    } else {
        roots_class = {{"class", "n"}};
    }
    r["roots_leaves"] = {{"means", rl},
                         {"roots_class", roots_class},
                         {"leaves_class", {{"class", "n"}}},
                         {"roots_to_leaves", rl.roots_total / rl.leaves_total}};

    const auto reg = hub_regime(b, n);
    const auto lim = hub_limit(a, b);
    r["hub"] = {{"regime", reg.regime}, {"m_n", reg.m},     {"b_n", reg.b},
                {"L", num(reg.L)},      {"c_eta", lim.c_eta}, {"eta", lim.eta}, {"atom", lim.atom()}};
    if (b - 1.0 > 1.0)
        r["hub"]["moment_d1"] = {{"frechet", frechet_moment(a, b - 1.0, 1.0)},
                                 {"printed", printed_moment_constant(a, b, 1.0)}};

    const auto in = degrees::in_degree_regime(a, b, 1.0);
    r["in_degree"] = {{"rows", in.rows}, {"lambda", in.lambda}, {"regime", in.regime}};

    r["gf2"] = threshold_verdict(Seed::power_law(a, b));
    write_json(dir / "report.json", out.summary);
    return out;
}

// ---------------------------------------------------------------- mc

struct ReplicaStats {
    std::vector<long> out_hist;  // histogram of the pooled out-degrees
    long in0 = 0;                // in-degree of column 0
    double fbl = 0.0, ffl = 0.0;
    long nullity = -1;
};

json suite_degrees(const EnsembleConfig& ec, const MixingSpec& expect, const std::vector<ReplicaStats>& rs,
                   const json& tol, long kmax_cfg) {
    const double pcrit = tol.value("p_value", 0.01);
    std::vector<double> obs;
    for (const auto& s : rs) {
        if (obs.size() < s.out_hist.size()) obs.resize(s.out_hist.size(), 0.0);
        for (std::size_t k = 0; k < s.out_hist.size(); ++k) obs[k] += static_cast<double>(s.out_hist[k]);
    }
    const long kmax = std::min<long>(kmax_cfg, static_cast<long>(obs.size()) - 1);
    std::vector<double> o(obs.begin(), obs.begin() + kmax + 1);
    double tail_obs = 0.0;
    for (std::size_t k = kmax + 1; k < obs.size(); ++k) tail_obs += obs[k];
    auto p = degrees::out_pmf_table(expect, ec.n, kmax);
    double ps = 0.0;
    for (double v : p) ps += v;
    o.push_back(tail_obs);
    p.push_back(std::max(0.0, 1.0 - ps));
    const auto out_cs = stats::chi_square(o, p);

    json j = {{"out", {{"statistic", out_cs.statistic}, {"dof", out_cs.dof}, {"p_value", out_cs.p_value},
                       {"pass", out_cs.p_value >= pcrit}}}};
    bool pass = out_cs.p_value >= pcrit;

    if (ec.variant == Variant::PartiallyExchangeable) {
        const long m = resolve_rows(ec);
        long kin = 0;
        for (const auto& s : rs) kin = std::max(kin, s.in0);
        std::vector<double> oi(kin + 1, 0.0);
        for (const auto& s : rs) oi[s.in0] += 1.0;
        auto pi = degrees::in_pmf_table(expect, ec.n, m, kin);
        double pis = 0.0;
        for (double v : pi) pis += v;
        oi.push_back(0.0);
        pi.push_back(std::max(0.0, 1.0 - pis));
        const auto in_cs = stats::chi_square(oi, pi);
        j["in"] = {{"statistic", in_cs.statistic}, {"dof", in_cs.dof}, {"p_value", in_cs.p_value},
                   {"pass", in_cs.p_value >= pcrit}};
        pass = pass && in_cs.p_value >= pcrit;
    } else {
        j["in"] = {{"skipped", "in-degree law is binomial only for the partially exchangeable variant"}};
    }
    j["pass"] = pass;
    return j;
}

json suite_motifs(const EnsembleConfig& ec, const MixingSpec& expect, const std::vector<ReplicaStats>& rs, const json& tol) {
    const double zc = tol.value("z", 3.0);
    if (resolve_rows(ec) != ec.n || ec.variant != Variant::PartiallyExchangeable)
        return {{"skipped", "motif moments are defined for the square partially exchangeable case"}, {"pass", true}};
    const auto means = motifs::mean_motifs(expect, ec.n, ec.n);
    const auto vars = motifs::var_motifs(expect, ec.n);
    json j;
    bool pass = true;
    auto check = [&](const char* name, double mean_th, double var_th, auto get) {
        std::vector<double> xs;
        for (const auto& s : rs) xs.push_back(get(s));
        const auto sm = stats::summarize(xs);
        const Z zm = z_test(sm.mean, mean_th, sm.std_error, zc);
        const auto [v, v_se] = variance_with_se(xs);
        const Z zv = z_test(v, var_th, v_se, zc);
        j[name] = {{"mean", sm.mean}, {"std_error", sm.std_error}, {"expected_mean", mean_th}, {"z_mean", zm.z},
                   {"variance", v},   {"variance_se", v_se},       {"expected_variance", var_th}, {"z_variance", zv.z},
                   {"pass", zm.pass && zv.pass}};
        pass = pass && zm.pass && zv.pass;
    };
    check("fbl", means.fbl, vars.fbl, [](const ReplicaStats& s) { return s.fbl; });
    check("ffl", means.ffl, vars.ffl, [](const ReplicaStats& s) { return s.ffl; });
    j["pass"] = pass;
    return j;
}

json suite_gf2(const EnsembleConfig& ec, const MixingSpec& expect, const std::vector<ReplicaStats>& rs, const json& tol) {
    if (rs.empty() || rs.front().nullity < 0)
        return {{"skipped", "n above mc.gf2_max_n"}, {"pass", true}};
    if (ec.variant != Variant::PartiallyExchangeable)
        return {{"skipped", "the mean-solution formula covers the partially exchangeable variant"}, {"pass", true}};
    std::vector<double> xs;
    for (const auto& s : rs) xs.push_back(std::ldexp(1.0, static_cast<int>(s.nullity)));
    const auto sm = stats::summarize(xs);
    const auto ex = gf2::expected_solutions(expect, ec.n, resolve_rows(ec));
    const Z z = z_test(sm.mean, ex.value, sm.std_error, tol.value("z", 3.0));
    return {{"mean", sm.mean}, {"std_error", sm.std_error}, {"expected", ex.value}, {"z", z.z}, {"pass", z.pass}};
}

json suite_hub(const EnsembleConfig& ec, const json& cfg, const json& tol, unsigned threads) {
    if (!hub_tail_params(ec.mixing)) return {{"skipped", "mixing has no Frechet hub limit"}, {"pass", true}};
    const auto rep = mc_hub(ec, hub_options(cfg, threads));
    const double ks_tol = tol.value("ks", 0.05);
    json j = rep;
    bool pass = rep.ks_distance < ks_tol;
    if (rep.atom) pass = pass && rep.atom->pass;
    j["ks_tolerance"] = ks_tol;
    j["pass"] = pass;
    return j;
}

Outcome cmd_mc(const json& cfg, unsigned threads) {
    const auto ec = cfg.at("ensemble").get<EnsembleConfig>();
    validate(ec);
    if (ec.replicas < 100) throw InvalidParameter("mc needs at least 100 replicas");
    const auto dir = output_dir(cfg);
    const json mc = section(cfg, "mc");
    const json tol = section(cfg, "tolerances");
    const auto suites = mc.at("suites").get<std::vector<std::string>>();
    MixingSpec expect = ec.mixing;
    if (mc.contains("expected_mixing") && !mc["expected_mixing"].is_null())
        expect = parse_as<MixingSpec>(mc["expected_mixing"], "mc.expected_mixing");
    mixing::validate(expect, ec.n);

    auto wants = [&](const char* s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
    const bool square = resolve_rows(ec) == ec.n;
    const bool do_gf2 = wants("gf2") && ec.n <= mc.value("gf2_max_n", 64L);
    const bool pooled = ec.variant == Variant::PartiallyExchangeable;

    std::vector<ReplicaStats> rs;
    if (wants("degrees") || wants("motifs") || wants("gf2")) {
        rs = parallel_map(ec.replicas, threads, [&](long i) {
            const GraphSample g = sample_graph(ec, i);
            ReplicaStats s;
            const auto out = out_degrees(g.matrix);
            for (std::size_t r = 0; r < (pooled ? out.size() : 1); ++r) {
                if (static_cast<long>(s.out_hist.size()) <= out[r]) s.out_hist.resize(out[r] + 1, 0);
                ++s.out_hist[out[r]];
            }
            for (std::size_t r = 0; r < g.matrix.rows(); ++r) s.in0 += g.matrix.get(r, 0);
            if (wants("motifs") && square) {
                const auto [fbl, ffl] = motifs::count_triangles(g.matrix);
                s.fbl = static_cast<double>(fbl);
                s.ffl = static_cast<double>(ffl);
            }
            if (do_gf2) s.nullity = static_cast<long>(g.matrix.rows()) - gf2::rank(g.matrix);
            return s;
        });
    }

    Outcome out;
    out.summary = envelope("mc", cfg);
    json& res = out.summary["result"];
    bool pass = true;
    if (wants("degrees")) res["degrees"] = suite_degrees(ec, expect, rs, tol, mc.value("kmax", 100L));
    if (wants("motifs")) res["motifs"] = suite_motifs(ec, expect, rs, tol);
    if (wants("hub")) res["hub"] = suite_hub(ec, cfg, tol, threads);
    if (wants("gf2")) {
        if (do_gf2) res["gf2"] = suite_gf2(ec, expect, rs, tol);
        else res["gf2"] = {{"skipped", "n above mc.gf2_max_n"}, {"pass", true}};
    }
    for (const auto& s : suites) pass = pass && res[s].at("pass").get<bool>();
    res["pass"] = pass;
    out.exit_code = pass ? kPass : kStatFail;
    write_json(dir / "mc.json", out.summary);
    return out;
}

}  // namespace

json load_config(const Options& opt) {
    std::ifstream is(opt.config);
    if (!is) throw IoError("cannot read config '" + opt.config.string() + "'");
    json cfg;
    try {
        cfg = json::parse(is);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw InvalidParameter("config must be a JSON object");
    if (cfg.value("schema", std::string()) != kSchema)
        throw InvalidParameter(std::string("config 'schema' must be \"") + kSchema + "\"");
    if (!cfg.contains("ensemble")) throw InvalidParameter("config needs an 'ensemble' object");

    json& ens = cfg["ensemble"];
    if (opt.seed) ens["seed"] = *opt.seed;
    if (!ens.contains("seed")) throw InvalidParameter("a seed is required: set ensemble.seed or pass --seed");
    // Round trip through the typed config so the embedded copy is fully resolved.
    ens = parse_as<EnsembleConfig>(ens, "ensemble");

    if (opt.out) cfg["output_dir"] = opt.out->string();
    set_default(cfg, "output_dir", "exchgraph_out");

    if (cfg.contains("tasks")) {
        const auto tasks = parse_as<std::vector<std::string>>(cfg["tasks"], "tasks");
        if (tasks.empty()) throw InvalidParameter("'tasks' must name at least one task");
        for (const auto& t : tasks) {
            if (t != "degrees" && t != "motifs" && t != "hub" && t != "gf2" && t != "report")
                throw InvalidParameter("unknown task '" + t + "'");
        }
    }

    json& tol = cfg["tolerances"];
    if (tol.is_null()) tol = json::object();
    set_default(tol, "p_value", 0.01);
    set_default(tol, "z", 3.0);
    set_default(tol, "ks", 0.05);

    json& mc = cfg["mc"];
    if (mc.is_null()) mc = json::object();
    set_default(mc, "suites", json(std::vector<std::string>(std::begin(kSuites), std::end(kSuites))));
    for (const auto& s : parse_as<std::vector<std::string>>(mc["suites"], "mc.suites")) {
        if (std::find(std::begin(kSuites), std::end(kSuites), s) == std::end(kSuites))
            throw InvalidParameter("unknown mc suite '" + s + "'");
    }
    set_default(mc, "kmax", 100);
    set_default(mc, "gf2_max_n", 64);
    set_default(mc, "expected_mixing", nullptr);
    return cfg;
}

Outcome run(const std::string& command, const json& cfg, unsigned threads) {
    try {
        if (command == "sample") return cmd_sample(cfg, threads);
        if (command == "degrees") return cmd_degrees(cfg, threads);
        if (command == "motifs") return cmd_motifs(cfg, threads);
        if (command == "hub") return cmd_hub(cfg, threads);
        if (command == "gf2") return cmd_gf2(cfg, threads);
        if (command == "report") return cmd_report(cfg, threads);
        if (command == "mc") return cmd_mc(cfg, threads);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("config: ") + e.what());
    }
    throw InvalidParameter("unknown command '" + command + "'");
}

int main_with(const Options& opt, std::ostream& err) {
    if (std::find(std::begin(kCommands), std::end(kCommands), opt.command) == std::end(kCommands)) {
        err << "exchgraph: unknown command '" << opt.command << "'\n";
        return kUsageOrIo;
    }
    try {
        const json cfg = load_config(opt);
        const Outcome o = run(opt.command, cfg, opt.threads);
        if (o.exit_code == kStatFail) err << "exchgraph: statistical checks failed, see " << opt.command << ".json\n";
        return o.exit_code;
    } catch (const IoError& e) {
        err << "exchgraph: I/O error: " << e.what() << '\n';
        return kUsageOrIo;
    } catch (const Error& e) {
        err << "exchgraph: " << e.what() << '\n';
        return kUsageOrIo;
    } catch (const std::exception& e) {
        err << "exchgraph: " << e.what() << '\n';
        return kUsageOrIo;
    }
}

}  // namespace exchgraph::cli
