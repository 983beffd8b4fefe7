#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sdnmanet/metrics.hpp"

namespace sdnmanet {

/// Column names of the flat CSV report, in output order. Stable.
const std::vector<std::string>& csv_columns();

/// Header line (no trailing newline).
std::string csv_header();

/// One CSV line per report. Non-finite values are written as empty fields.
std::string csv_row(const MetricsReport& report);

/// Row of column means for a sweep; the seed column reads "mean".
std::string csv_summary_row(const Summary& summary);

/// JSON documents. NaN becomes null and back.
std::string report_to_json(const MetricsReport& report);
MetricsReport report_from_json(std::string_view text);
std::string comparison_to_json(const ComparisonTable& table);
std::string summary_to_json(const Summary& summary);

}  // namespace sdnmanet
