#pragma once
// JSON forms of specs, configs and reports. Parsing failures throw
// InvalidParameter with the offending field named.

#include <json.hpp>

#include "exchgraph/error.hpp"

#include "exchgraph/degrees.hpp"
#include "exchgraph/ensemble.hpp"
#include "exchgraph/gf2.hpp"
#include "exchgraph/hub.hpp"
#include "exchgraph/mixing.hpp"
#include "exchgraph/motifs.hpp"
#include "exchgraph/seed.hpp"

namespace exchgraph {

using json = nlohmann::json;

void to_json(json& j, const Seed& s);
void from_json(const json& j, Seed& s);
void to_json(json& j, const GTable& g);
void from_json(const json& j, GTable& g);
void to_json(json& j, const MixingSpec& m);
void from_json(const json& j, MixingSpec& m);
void to_json(json& j, const RowRule& r);
void from_json(const json& j, RowRule& r);
void to_json(json& j, const Variant& v);
void from_json(const json& j, Variant& v);
void to_json(json& j, const EnsembleConfig& c);
void from_json(const json& j, EnsembleConfig& c);
void to_json(json& j, const LimitLaw& l);
void from_json(const json& j, LimitLaw& l);

void to_json(json& j, const BigCount& c);
void to_json(json& j, const Gf2Report& r);
void to_json(json& j, const HubReport& r);
void to_json(json& j, const HubAtomTest& a);
void to_json(json& j, const HubMomentCheck& m);
void to_json(json& j, const MotifCounts& c);

namespace gf2 {
void to_json(json& j, const ExpectedSolutions& e);
void to_json(json& j, const RateReport& r);
void to_json(json& j, const ThresholdReport& r);
}  // namespace gf2

namespace motifs {
void to_json(json& j, const RootLeafMeans& r);
void to_json(json& j, const MotifMeans& m);
void to_json(json& j, const MotifVariances& v);
void to_json(json& j, const ConnectivityBound& b);
}  // namespace motifs

namespace degrees {
void to_json(json& j, const MomentTransferReport& r);
}  // namespace degrees

/// Parse with field context: wraps nlohmann errors into InvalidParameter.
template <class T>
T parse_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string(what) + ": " + e.what());
    }
}

}  // namespace exchgraph
