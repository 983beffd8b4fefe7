#include "sdnmanet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdnmanet/econ.hpp"

namespace sdnmanet {

const ComparisonRow& ComparisonTable::row(const std::string& metric) const {
  for (const ComparisonRow& r : rows) {
    if (r.metric == metric) return r;
  }
  throw std::out_of_range("no comparison row '" + metric + "'");
}

bool ComparisonTable::all_satisfied() const {
  return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.satisfied; });
}

namespace {

ComparisonRow make_row(std::string metric, double manet, double sdn, Direction expected) {
  ComparisonRow row{std::move(metric), manet, sdn, expected, false};
  // NaN on either side compares false: the direction is not shown.
  row.satisfied = expected == Direction::kLower ? sdn < manet : sdn > manet;
  return row;
}

}  // namespace

ComparisonTable compare(const MetricsReport& manet, const MetricsReport& sdn) {
  if (manet.mode != Mode::kManet || sdn.mode != Mode::kSdn) {
    throw ModeMismatch("compare needs one manet report and one sdn report");
  }
  ComparisonTable table;
  table.rows.push_back(make_row("latency_ms", manet.latency_mean_ms, sdn.latency_mean_ms,
                                Direction::kLower));
  table.rows.push_back(make_row("throughput_bps", manet.throughput_bps, sdn.throughput_bps,
                                Direction::kHigher));
  table.rows.push_back(make_row("pdr", manet.pdr, sdn.pdr, Direction::kHigher));
  table.rows.push_back(make_row("overhead", manet.overhead, sdn.overhead, Direction::kLower));
  table.pdr_not_worse = sdn.pdr >= manet.pdr;
  if (manet.throughput_bps > 0.0) {
    table.eta_opt = sdn.throughput_bps / manet.throughput_bps;
    const double total_bits = 8.0 * static_cast<double>(sdn.data_bytes + sdn.control_bytes);
    if (total_bits > 0.0) {
      table.eta_sdn =
          econ::efficiency_sdn(8.0 * static_cast<double>(sdn.useful_bytes), total_bits, *table.eta_opt);
    }
  }
  return table;
}

const std::vector<std::string>& summary_metric_names() {
  static const std::vector<std::string> names = {
      "packets_sent",   "packets_delivered", "packets_dropped",  "in_flight_at_end",
      "pdr",            "latency_mean_ms",   "latency_p50_ms",   "latency_p95_ms",
      "throughput_bps", "control_bytes",     "data_bytes",       "overhead",
      "update_time_mean_ms", "efficiency",
  };
  return names;
}

double metric_value(const MetricsReport& r, const std::string& name) {
  if (name == "packets_sent") return static_cast<double>(r.packets_sent);
  if (name == "packets_delivered") return static_cast<double>(r.packets_delivered);
  if (name == "packets_dropped") return static_cast<double>(r.packets_dropped);
  if (name == "in_flight_at_end") return static_cast<double>(r.in_flight_at_end);
  if (name == "pdr") return r.pdr;
  if (name == "latency_mean_ms") return r.latency_mean_ms;
  if (name == "latency_p50_ms") return r.latency_p50_ms;
  if (name == "latency_p95_ms") return r.latency_p95_ms;
  if (name == "throughput_bps") return r.throughput_bps;
  if (name == "control_bytes") return static_cast<double>(r.control_bytes);
  if (name == "data_bytes") return static_cast<double>(r.data_bytes);
  if (name == "overhead") return r.overhead;
  if (name == "update_time_mean_ms") return r.update_time_mean_ms;
  if (name == "efficiency") return r.efficiency;
  throw std::out_of_range("unknown metric '" + name + "'");
}

const MetricStat& Summary::stat(const std::string& name) const {
  for (const MetricStat& s : stats) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no summary statistic '" + name + "'");
}

Summary aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw EmptyInput("aggregate needs at least one report");
  const Mode mode = reports.front().mode;
  for (const MetricsReport& r : reports) {
    if (r.mode != mode) throw ModeMismatch("aggregate needs reports of a single mode");
  }
  Summary summary;
  summary.mode = mode;
  summary.runs = static_cast<std::int64_t>(reports.size());
  for (const std::string& name : summary_metric_names()) {
    MetricStat stat;
    stat.name = name;
    std::vector<double> values;
    for (const MetricsReport& r : reports) {
      const double v = metric_value(r, name);
      if (std::isfinite(v)) values.push_back(v);
    }
    stat.count = static_cast<std::int64_t>(values.size());
    if (values.empty()) {
      stat.mean = stat.stddev = stat.min = stat.max = std::numeric_limits<double>::quiet_NaN();
    } else {
      double sum = 0.0;
      for (double v : values) sum += v;
      stat.mean = sum / static_cast<double>(values.size());
      double ss = 0.0;
      for (double v : values) ss += (v - stat.mean) * (v - stat.mean);
      stat.stddev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
      stat.min = *std::min_element(values.begin(), values.end());
      stat.max = *std::max_element(values.begin(), values.end());
    }
    summary.stats.push_back(std::move(stat));
  }
  return summary;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (values[hi] - values[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace sdnmanet
