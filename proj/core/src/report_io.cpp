#include "sdnmanet/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json_io.hpp"

namespace sdnmanet {

using nlohmann::json;

namespace {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_number(std::int64_t v) { return std::to_string(v); }

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "mode",           "seed",           "duration_ms",     "packets_sent",
      "packets_delivered", "packets_dropped", "in_flight_at_end", "pdr",
      "latency_mean_ms", "latency_p50_ms", "latency_p95_ms",  "throughput_bps",
      "control_bytes",  "data_bytes",     "overhead",        "update_samples",
      "update_time_mean_ms", "useful_bytes", "efficiency",
  };
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const std::string& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const MetricsReport& r) {
  const std::string fields[] = {
      to_string(r.mode),
      std::to_string(r.seed),
      format_number(r.duration_ms),
      format_number(r.packets_sent),
      format_number(r.packets_delivered),
      format_number(r.packets_dropped),
      format_number(r.in_flight_at_end),
      format_number(r.pdr),
      format_number(r.latency_mean_ms),
      format_number(r.latency_p50_ms),
      format_number(r.latency_p95_ms),
      format_number(r.throughput_bps),
      format_number(r.control_bytes),
      format_number(r.data_bytes),
      format_number(r.overhead),
      format_number(static_cast<std::int64_t>(r.update_times_ms.size())),
      format_number(r.update_time_mean_ms),
      format_number(r.useful_bytes),
      format_number(r.efficiency),
  };
  std::string out;
  for (const std::string& f : fields) {
    if (&f != &fields[0]) out += ',';
    out += f;
  }
  return out;
}

std::string csv_summary_row(const Summary& summary) {
  std::string out;
  for (const std::string& column : csv_columns()) {
    if (!out.empty()) out += ',';
    if (column == "mode") {
      out += to_string(summary.mode);
    } else if (column == "seed") {
      out += "mean";
    } else {
      for (const MetricStat& s : summary.stats) {
        if (s.name == column) out += format_number(s.mean);
      }
    }
  }
  return out;
}

namespace detail {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json to_json(const MetricsReport& r) {
  json times = json::array();
  for (double t : r.update_times_ms) times.push_back(number_or_null(t));
  return {
      {"mode", to_string(r.mode)},
      {"seed", r.seed},
      {"duration_ms", r.duration_ms},
      {"packets_sent", r.packets_sent},
      {"packets_delivered", r.packets_delivered},
      {"packets_dropped", r.packets_dropped},
      {"in_flight_at_end", r.in_flight_at_end},
      {"drops_by_cause", r.drops_by_cause},
      {"latency_samples", r.latency_samples},
      {"latency_mean_ms", number_or_null(r.latency_mean_ms)},
      {"latency_p50_ms", number_or_null(r.latency_p50_ms)},
      {"latency_p95_ms", number_or_null(r.latency_p95_ms)},
      {"throughput_bps", number_or_null(r.throughput_bps)},
      {"pdr", number_or_null(r.pdr)},
      {"control_bytes", r.control_bytes},
      {"data_bytes", r.data_bytes},
      {"overhead", number_or_null(r.overhead)},
      {"control_messages_by_kind", r.control_messages_by_kind},
      {"control_bytes_by_kind", r.control_bytes_by_kind},
      {"update_times_ms", times},
      {"update_time_mean_ms", number_or_null(r.update_time_mean_ms)},
      {"useful_bytes", r.useful_bytes},
      {"efficiency", number_or_null(r.efficiency)},
  };
}

MetricsReport report_from(const json& j) {
  MetricsReport r;
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.duration_ms = j.at("duration_ms").get<double>();
  r.packets_sent = j.at("packets_sent").get<std::int64_t>();
  r.packets_delivered = j.at("packets_delivered").get<std::int64_t>();
  r.packets_dropped = j.at("packets_dropped").get<std::int64_t>();
  r.in_flight_at_end = j.at("in_flight_at_end").get<std::int64_t>();
  r.drops_by_cause = j.at("drops_by_cause").get<std::map<std::string, std::int64_t>>();
  r.latency_samples = j.at("latency_samples").get<std::int64_t>();
  r.latency_mean_ms = number_or_nan(j.at("latency_mean_ms"));
  r.latency_p50_ms = number_or_nan(j.at("latency_p50_ms"));
  r.latency_p95_ms = number_or_nan(j.at("latency_p95_ms"));
  r.throughput_bps = number_or_nan(j.at("throughput_bps"));
  r.pdr = number_or_nan(j.at("pdr"));
  r.control_bytes = j.at("control_bytes").get<std::int64_t>();
  r.data_bytes = j.at("data_bytes").get<std::int64_t>();
  r.overhead = number_or_nan(j.at("overhead"));
  r.control_messages_by_kind =
      j.at("control_messages_by_kind").get<std::map<std::string, std::int64_t>>();
  r.control_bytes_by_kind = j.at("control_bytes_by_kind").get<std::map<std::string, std::int64_t>>();
  for (const json& t : j.at("update_times_ms")) r.update_times_ms.push_back(number_or_nan(t));
  r.update_time_mean_ms = number_or_nan(j.at("update_time_mean_ms"));
  r.useful_bytes = j.at("useful_bytes").get<std::int64_t>();
  r.efficiency = number_or_nan(j.at("efficiency"));
  return r;
}

json to_json(const ComparisonTable& t) {
  json rows = json::array();
  for (const ComparisonRow& row : t.rows) {
    rows.push_back({{"metric", row.metric},
                    {"manet", number_or_null(row.manet)},
                    {"sdn", number_or_null(row.sdn)},
                    {"expected", row.expected == Direction::kLower ? "lower" : "higher"},
                    {"satisfied", row.satisfied}});
  }
  return {{"rows", rows},
          {"pdr_not_worse", t.pdr_not_worse},
          {"all_satisfied", t.all_satisfied()},
          {"eta_opt", t.eta_opt ? number_or_null(*t.eta_opt) : json(nullptr)},
          {"eta_sdn", t.eta_sdn ? number_or_null(*t.eta_sdn) : json(nullptr)}};
}

json to_json(const Summary& s) {
  json stats = json::array();
  for (const MetricStat& m : s.stats) {
    stats.push_back({{"name", m.name},
                     {"count", m.count},
                     {"mean", number_or_null(m.mean)},
                     {"stddev", number_or_null(m.stddev)},
                     {"min", number_or_null(m.min)},
                     {"max", number_or_null(m.max)}});
  }
  return {{"mode", to_string(s.mode)}, {"runs", s.runs}, {"stats", stats}};
}

}  // namespace detail

std::string report_to_json(const MetricsReport& report) { return detail::to_json(report).dump(2); }

MetricsReport report_from_json(std::string_view text) {
  try {
    return detail::report_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string comparison_to_json(const ComparisonTable& table) {
  return detail::to_json(table).dump(2);
}

std::string summary_to_json(const Summary& summary) { return detail::to_json(summary).dump(2); }

}  // namespace sdnmanet
