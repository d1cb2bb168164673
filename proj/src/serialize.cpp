#include "exchgraph/serialize.hpp"

#include <cmath>

namespace exchgraph {

namespace {

json num(double d) {
    if (std::isnan(d)) return nullptr;
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    return d;
}

double get_num(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw InvalidParameter(std::string("field '") + key + "' is not a number");
    }
    return v.get<double>();
}

std::string tag(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidParameter(std::string("missing '") + key + "' discriminator");
    return j.at(key).get<std::string>();
}

}  // namespace

void to_json(json& j, const Seed& s) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DiracSeed>) j = {{"family", "Dirac"}, {"t", x.t}};
            else if constexpr (std::is_same_v<T, ExponentialSeed>) j = {{"family", "Exponential"}, {"gamma", x.gamma}};
            else if constexpr (std::is_same_v<T, GammaSeed>) j = {{"family", "Gamma"}, {"r", x.r}, {"gamma", x.gamma}};
            else if constexpr (std::is_same_v<T, LerchSeed>) j = {{"family", "Lerch"}, {"alpha", x.alpha}, {"s", x.s}};
            else if constexpr (std::is_same_v<T, ParetoTailSeed>)
                j = {{"family", "ParetoTail"}, {"alpha", x.alpha}, {"eta", x.eta}};
            else j = {{"family", "PowerLaw"}, {"alpha", x.alpha}, {"beta", x.beta}};
        },
        s.v);
}

void from_json(const json& j, Seed& s) {
    const auto f = tag(j, "family");
    if (f == "Dirac") s = Seed::dirac(get_num(j, "t"));
    else if (f == "Exponential") s = Seed::exponential(get_num(j, "gamma"));
    else if (f == "Gamma") s = Seed::gamma(get_num(j, "r"), get_num(j, "gamma"));
    else if (f == "Lerch") s = Seed::lerch(get_num(j, "alpha"), get_num(j, "s"));
    else if (f == "ParetoTail") s = Seed::pareto_tail(get_num(j, "alpha"), get_num(j, "eta"));
    else if (f == "PowerLaw") s = Seed::power_law(get_num(j, "alpha"), get_num(j, "beta"));
    else throw InvalidParameter("unknown seed family '" + f + "'");
}

void to_json(json& j, const GTable& g) {
    j = json::object();
    j["points"] = json::array();
    for (auto [t, v] : g.points) j["points"].push_back({t, v});
    j["c1"] = g.c1;
    j["c2"] = g.c2;
}

void from_json(const json& j, GTable& g) {
    g.points.clear();
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) throw InvalidParameter("g table entries must be [tau, g] pairs");
        g.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    g.c1 = get_num(j, "c1");
    g.c2 = get_num(j, "c2");
}

void to_json(json& j, const MixingSpec& m) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DiracMixing>) j = {{"variant", "Dirac"}, {"lambda", x.lambda}};
            else if constexpr (std::is_same_v<T, PowerLawMixing>)
                j = {{"variant", "PowerLaw"}, {"alpha", x.alpha}, {"beta", x.beta}};
            else if constexpr (std::is_same_v<T, ModulatedPowerLawMixing>)
                j = {{"variant", "ModulatedPowerLaw"}, {"alpha", x.alpha}, {"beta", x.beta}, {"g", x.g}};
            else if constexpr (std::is_same_v<T, SeedCdfMixing>) j = {{"variant", "SeedCdf"}, {"seed", x.seed}};
            else
                j = {{"variant", "Hierarchical"}, {"A", x.A}, {"beta", x.beta}, {"gamma_exp", x.gamma_exp}};
        },
        m.v);
}

void from_json(const json& j, MixingSpec& m) {
    const auto v = tag(j, "variant");
    if (v == "Dirac") m = MixingSpec::dirac(get_num(j, "lambda"));
    else if (v == "PowerLaw") m = MixingSpec::power_law(get_num(j, "alpha"), get_num(j, "beta"));
    else if (v == "ModulatedPowerLaw")
        m = MixingSpec::modulated(get_num(j, "alpha"), get_num(j, "beta"), j.at("g").get<GTable>());
    else if (v == "SeedCdf") m = MixingSpec::seed_cdf(j.at("seed").get<Seed>());
    else if (v == "Hierarchical")
        m = MixingSpec::hierarchical(get_num(j, "A"), get_num(j, "beta"), get_num(j, "gamma_exp"));
    else throw InvalidParameter("unknown mixing variant '" + v + "'");
}

void to_json(json& j, const RowRule& r) {
    switch (r.kind) {
        case RowRule::Kind::Square: j = {{"rule", "Square"}}; break;
        case RowRule::Kind::Fraction: j = {{"rule", "Fraction"}, {"delta", r.delta}}; break;
        case RowRule::Kind::PowerFraction: j = {{"rule", "PowerFraction"}, {"delta", r.delta}}; break;
        case RowRule::Kind::LogFraction: j = {{"rule", "LogFraction"}, {"delta", r.delta}}; break;
        case RowRule::Kind::Explicit: j = {{"rule", "Explicit"}, {"m", r.m}}; break;
    }
}

void from_json(const json& j, RowRule& r) {
    const auto k = tag(j, "rule");
    if (k == "Square") r = RowRule::square();
    else if (k == "Fraction") r = RowRule::fraction(get_num(j, "delta"));
    else if (k == "PowerFraction") r = RowRule::power_fraction(get_num(j, "delta"));
    else if (k == "LogFraction") r = RowRule::log_fraction(get_num(j, "delta"));
    else if (k == "Explicit") r = RowRule::explicit_rows(j.at("m").get<long>());
    else throw InvalidParameter("unknown row rule '" + k + "'");
}

void to_json(json& j, const Variant& v) { j = variant_name(v); }

void from_json(const json& j, Variant& v) {
    const auto s = j.get<std::string>();
    if (s == variant_name(Variant::PartiallyExchangeable)) v = Variant::PartiallyExchangeable;
    else if (s == variant_name(Variant::CompletelyExchangeable)) v = Variant::CompletelyExchangeable;
    else if (s == variant_name(Variant::Hierarchical)) v = Variant::Hierarchical;
    else throw InvalidParameter("unknown ensemble variant '" + s + "'");
}

void to_json(json& j, const EnsembleConfig& c) {
    j = {{"n", c.n},           {"rows", c.rows}, {"mixing", c.mixing}, {"variant", c.variant},
         {"seed", c.master_seed}, {"replicas", c.replicas}};
}

void from_json(const json& j, EnsembleConfig& c) {
    c = EnsembleConfig{};
    c.n = j.at("n").get<long>();
    if (j.contains("rows")) c.rows = j.at("rows").get<RowRule>();
    c.mixing = j.at("mixing").get<MixingSpec>();
    if (j.contains("variant")) c.variant = j.at("variant").get<Variant>();
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("replicas")) c.replicas = j.at("replicas").get<long>();
}

void to_json(json& j, const LimitLaw& l) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PoissonLaw>) j = {{"family", "Poisson"}, {"lambda", x.lambda}};
            else if constexpr (std::is_same_v<T, PoissonMixtureLaw>) j = {{"family", "PoissonMixture"}, {"seed", x.seed}};
            else if constexpr (std::is_same_v<T, GeometricLaw>) j = {{"family", "Geometric"}, {"gamma", x.gamma}};
            else if constexpr (std::is_same_v<T, NegativeBinomialLaw>)
                j = {{"family", "NegativeBinomial"}, {"r", x.r}, {"gamma", x.gamma}};
            else if constexpr (std::is_same_v<T, PowerLawTailLaw>)
                j = {{"family", "PowerLawTail"}, {"alpha", x.alpha}, {"beta", x.beta}};
            else if constexpr (std::is_same_v<T, LerchZipfLaw>)
                j = {{"family", "LerchZipf"}, {"alpha", x.alpha}, {"s", x.s}};
            else
                j = {{"family", "HierarchicalMixture"}, {"A", x.A}, {"beta", x.beta}, {"gamma_exp", x.gamma_exp}};
        },
        l.v);
}

void from_json(const json& j, LimitLaw& l) {
    const auto f = tag(j, "family");
    if (f == "Poisson") l = {PoissonLaw{get_num(j, "lambda")}};
    else if (f == "PoissonMixture") l = {PoissonMixtureLaw{j.at("seed").get<Seed>()}};
    else if (f == "Geometric") l = {GeometricLaw{get_num(j, "gamma")}};
    else if (f == "NegativeBinomial") l = {NegativeBinomialLaw{get_num(j, "r"), get_num(j, "gamma")}};
    else if (f == "PowerLawTail") l = {PowerLawTailLaw{get_num(j, "alpha"), get_num(j, "beta")}};
    else if (f == "LerchZipf") l = {LerchZipfLaw{get_num(j, "alpha"), get_num(j, "s")}};
    else if (f == "HierarchicalMixture")
        l = {HierarchicalMixtureLaw{get_num(j, "A"), get_num(j, "beta"), get_num(j, "gamma_exp")}};
    else throw InvalidParameter("unknown limit law family '" + f + "'");
}

void to_json(json& j, const BigCount& c) {
    j = {{"exponent", c.exponent}, {"minus_one", c.minus_one}, {"log2", num(c.log2)}};
    j["exact"] = c.exact ? json(*c.exact) : json(nullptr);
}

void to_json(json& j, const Gf2Report& r) {
    j = {{"m", r.m},
         {"n", r.n},
         {"rank", r.rank},
         {"nullity_of_transpose", r.nullity_of_transpose},
         {"N_solutions", r.N_solutions},
         {"S_hypercycles", r.S_hypercycles}};
}

void gf2::to_json(json& j, const ExpectedSolutions& e) {
    j = {{"value", num(e.value)}, {"log_value", num(e.log_value)}, {"z_set", e.z_set}};
}

void gf2::to_json(json& j, const RateReport& r) {
    j = {{"gamma", r.gamma},
         {"I_gamma", num(r.I_gamma)},
         {"argmax_x", r.argmax_x},
         {"theta0", num(r.theta0)},
         {"exceeds_baseline", r.exceeds_baseline}};
    j["gamma_c"] = r.gamma_c ? json(*r.gamma_c) : json(nullptr);
}

void gf2::to_json(json& j, const ThresholdReport& r) {
    j = {{"gamma_c", r.gamma_c}, {"monotone", r.monotone}};
    j["trace"] = json::array();
    for (auto [g, v] : r.trace) j["trace"].push_back({{"gamma", g}, {"exceeds_baseline", v}});
    j["tail_ratios"] = json::array();
    for (auto [x, v] : r.tail_ratios) j["tail_ratios"].push_back({{"x", x}, {"ratio", num(v)}});
}

void to_json(json& j, const HubAtomTest& a) {
    j = {{"observed", a.observed},   {"expected", a.expected}, {"std_error", a.std_error},
         {"z", num(a.z)},            {"pass", a.pass},         {"corrected_expected", a.corrected_expected}};
}

void to_json(json& j, const HubMomentCheck& m) {
    j = {{"d", m.d},
         {"mean", m.mean},
         {"std_error", m.std_error},
         {"frechet", m.frechet},
         {"printed", m.printed},
         {"frechet_within_3se", m.frechet_within_3se},
         {"printed_within_3se", m.printed_within_3se},
         {"winner", m.winner}};
}

void to_json(json& j, const HubReport& r) {
    j = {{"n", r.n},
         {"m", r.m},
         {"b", r.b},
         {"L", num(r.L)},
         {"has_limit", r.has_limit},
         {"c_eta", r.c_eta},
         {"eta", r.eta},
         {"ks_distance", r.ks_distance}};
    j["atom"] = r.atom ? json(*r.atom) : json(nullptr);
    j["moment"] = r.moment ? json(*r.moment) : json(nullptr);
}

void to_json(json& j, const MotifCounts& c) {
    j = json::object();
    j["fbl"] = c.fbl;
    j["ffl"] = c.ffl;
    j["roots"] = c.roots;
    j["leaves"] = c.leaves;
    j["isolated"] = c.isolated;
    j["n_components"] = c.n_components;
    j["is_connected"] = c.is_connected;
    j["k_cycles"] = json::object();
    for (auto [k, v] : c.k_cycles) j["k_cycles"][std::to_string(k)] = v;
}

void motifs::to_json(json& j, const RootLeafMeans& r) {
    j = {{"root_per_sender", r.root_per_sender},
         {"leaf_per_sender", r.leaf_per_sender},
         {"leaf_per_receiver", r.leaf_per_receiver},
         {"roots_total", r.roots_total},
         {"leaves_total", r.leaves_total}};
}

void motifs::to_json(json& j, const MotifMeans& m) {
    j = {{"fbl", m.fbl}, {"ffl", m.ffl}, {"roots_leaves", m.roots_leaves}};
    j["k_cycles"] = json::object();
    for (auto [k, v] : m.k_cycles) j["k_cycles"][std::to_string(k)] = v;
}

void motifs::to_json(json& j, const MotifVariances& v) {
    j = {{"fbl", v.fbl}, {"ffl", v.ffl}, {"ffl_display", v.ffl_display}};
}

void motifs::to_json(json& j, const ConnectivityBound& b) {
    j = {{"a_n", b.a_n}, {"p_connected_upper", b.p_connected_upper}};
}

void degrees::to_json(json& j, const MomentTransferReport& r) {
    j = {{"pmf_partial", num(r.pmf_partial)},
         {"mixing_partial", num(r.mixing_partial)},
         {"pmf_stabilized", r.pmf_stabilized},
         {"mixing_stabilized", r.mixing_stabilized},
         {"both_finite_verdict", r.both_finite_verdict},
         {"agree", r.agree}};
}

}  // namespace exchgraph
