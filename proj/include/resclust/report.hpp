#pragma once

#include <json.hpp>

#include "resclust/resilience.hpp"

namespace resclust {

// JSON conventions: cluster ids are 1-based, point indices 0-based, keys in
// the fixed order written below, +inf serialized as null.
using Json = nlohmann::ordered_json;

Json to_json(const ValidationReport& r);
Json to_json(const OracleResult& r);
Json to_json(const ProximityReport& r);
Json to_json(const CloserReport& r);
Json to_json(const ResilienceProbeReport& r);
Json to_json(const Clustering& c);

Json one_based(std::span<const int> assignment);

}  // namespace resclust
