#pragma once

// Conversions between report structs and nlohmann::json, shared by the
// report and experiment writers. Not installed.

#include "json.hpp"
#include "sdnmanet/metrics.hpp"

namespace sdnmanet::detail {

nlohmann::json number_or_null(double v);
double number_or_nan(const nlohmann::json& j);

nlohmann::json to_json(const MetricsReport& r);
MetricsReport report_from(const nlohmann::json& j);
nlohmann::json to_json(const ComparisonTable& t);
nlohmann::json to_json(const Summary& s);

}  // namespace sdnmanet::detail
