#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdnmanet/types.hpp"

namespace sdnmanet {

/// Per-run counters and timing summaries.
struct MetricsReport {
  Mode mode = Mode::kManet;
  std::uint64_t seed = 0;
  SimTime duration_ms = 0.0;

  std::int64_t packets_sent = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t in_flight_at_end = 0;
  std::map<std::string, std::int64_t> drops_by_cause;

  std::int64_t latency_samples = 0;
  double latency_mean_ms = 0.0;  // NaN when nothing was delivered
  double latency_p50_ms = 0.0;
  double latency_p95_ms = 0.0;

  double throughput_bps = 0.0;  // delivered payload bits per simulated second
  double pdr = 0.0;

  std::int64_t control_bytes = 0;
  std::int64_t data_bytes = 0;  // data bytes put on the air, every hop
  double overhead = 0.0;        // control / (control + data)
  std::map<std::string, std::int64_t> control_messages_by_kind;
  std::map<std::string, std::int64_t> control_bytes_by_kind;

  std::vector<double> update_times_ms;  // route repair / reconfiguration samples
  double update_time_mean_ms = 0.0;     // NaN without samples

  std::int64_t useful_bytes = 0;  // delivered payload
  double efficiency = 0.0;        // useful / (data + control)

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

class ModeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Direction { kLower, kHigher };

struct ComparisonRow {
  std::string metric;
  double manet = 0.0;
  double sdn = 0.0;
  Direction expected = Direction::kLower;  // expected direction of the SDN value
  bool satisfied = false;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // latency, throughput, pdr, overhead
  bool pdr_not_worse = false;       // PDR_SDN >= PDR_MANET
  std::optional<double> eta_opt;    // SDN goodput / MANET goodput
  std::optional<double> eta_sdn;    // data efficiency of the SDN run scaled by eta_opt

  const ComparisonRow& row(const std::string& metric) const;
  bool all_satisfied() const;
};

/// Paired comparison. Throws ModeMismatch unless one report of each mode.
ComparisonTable compare(const MetricsReport& manet, const MetricsReport& sdn);

struct MetricStat {
  std::string name;
  std::int64_t count = 0;  // finite samples
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation; 0 for one sample
  double min = 0.0;
  double max = 0.0;
};

struct Summary {
  Mode mode = Mode::kManet;
  std::int64_t runs = 0;
  std::vector<MetricStat> stats;  // fixed order, see summary_metric_names()

  const MetricStat& stat(const std::string& name) const;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& summary_metric_names();
double metric_value(const MetricsReport& report, const std::string& name);

/// Mean/stddev/min/max per metric. Throws EmptyInput or ModeMismatch.
Summary aggregate(std::span<const MetricsReport> reports);

/// Linear-interpolated percentile of an unsorted sample, q in [0, 1].
double percentile(std::vector<double> values, double q);

}  // namespace sdnmanet
