#include "sdnmanet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "json_io.hpp"
#include "sdnmanet/report_io.hpp"
#include "sdnmanet/simulation.hpp"

namespace sdnmanet {

using nlohmann::json;

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv|json)");
}

PairedRun compare_modes(const ScenarioConfig& config) {
  PairedRun run;
  run.manet = run_scenario(config, Mode::kManet);
  run.sdn = run_scenario(config, Mode::kSdn);
  run.table = compare(run.manet, run.sdn);
  return run;
}

SweepResult sweep(const ScenarioConfig& config, Mode mode, std::uint64_t first_seed, int count,
                  unsigned threads) {
  if (count < 1) throw std::invalid_argument("sweep needs at least one seed");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));

  SweepResult result;
  result.runs.resize(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        ScenarioConfig c = config;
        c.seed = first_seed + static_cast<std::uint64_t>(i);
        result.runs[static_cast<std::size_t>(i)] = run_scenario(c, mode);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  result.summary = aggregate(result.runs);
  return result;
}

CostReport cost_analysis(const ScenarioConfig& config) {
  const econ::CostBook& book = config.costs;
  econ::validate(book);
  const CostAnalysis& ca = config.cost_analysis;

  CostReport out;
  for (std::int64_t n = ca.n_min; n <= ca.n_max; ++n) {
    const auto count = static_cast<std::size_t>(n);
    out.curve.push_back({n, econ::capex_manet(book, count), econ::capex_sdn(book, count),
                         econ::opex_manet(book, count), econ::opex_sdn(book, count),
                         econ::capacity_sdn(config.capacity, count)});
  }
  try {
    out.capex_breakeven = econ::capex_breakeven(book);
  } catch (const std::invalid_argument&) {
    out.breakeven_defined = false;
  }
  out.warnings = econ::lint(book);

  std::optional<PairedRun> paired;
  const bool need_runs = !ca.eta_opt || !ca.useful_bits;
  if (need_runs) paired = compare_modes(config);
  if (ca.eta_opt) {
    out.eta_opt = ca.eta_opt;
    out.eta_source = "config";
  } else {
    out.eta_opt = paired->table.eta_opt;
    out.eta_source = "paired_runs";
  }
  if (ca.useful_bits) {
    out.useful_bits = *ca.useful_bits;
    out.total_bits = *ca.total_bits;
  } else {
    out.useful_bits = 8.0 * static_cast<double>(paired->sdn.useful_bytes);
    out.total_bits = 8.0 * static_cast<double>(paired->sdn.data_bytes + paired->sdn.control_bytes);
  }
  if (out.eta_opt && out.total_bits > 0.0) {
    out.eta_sdn = econ::efficiency_sdn(out.useful_bits, out.total_bits, *out.eta_opt);
  }

  out.capacity_total = econ::capacity_total(config.capacity);
  out.allocation = econ::allocate_resources(config.resources);
  out.allocation_cost = econ::allocation_cost(out.allocation, config.resources);
  out.risk = econ::security_risk(config.vulnerabilities);
  std::set<NodeId> quarantined;
  for (const QuarantineEvent& q : config.quarantine_events) quarantined.insert(q.node);
  out.risk_after_quarantine = econ::security_risk(config.vulnerabilities, quarantined);
  return out;
}

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json optional_number(const std::optional<double>& v) {
  return v ? detail::number_or_null(*v) : json(nullptr);
}

}  // namespace

std::string format_run(const MetricsReport& report, OutputFormat format) {
  if (format == OutputFormat::kCsv) return csv_header() + "\n" + csv_row(report) + "\n";
  return detail::to_json(report).dump(2) + "\n";
}

std::string format_compare(const PairedRun& run, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    return csv_header() + "\n" + csv_row(run.manet) + "\n" + csv_row(run.sdn) + "\n";
  }
  const json doc = {{"manet", detail::to_json(run.manet)},
                    {"sdn", detail::to_json(run.sdn)},
                    {"comparison", detail::to_json(run.table)}};
  return doc.dump(2) + "\n";
}

std::string format_sweep(const SweepResult& result, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    std::string out = csv_header() + "\n";
    for (const MetricsReport& r : result.runs) out += csv_row(r) + "\n";
    out += csv_summary_row(result.summary) + "\n";
    return out;
  }
  json runs = json::array();
  for (const MetricsReport& r : result.runs) runs.push_back(detail::to_json(r));
  const json doc = {{"runs", runs}, {"summary", detail::to_json(result.summary)}};
  return doc.dump(2) + "\n";
}

std::string format_cost(const CostReport& report, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    std::string out = "n,capex_manet,capex_sdn,opex_manet,opex_sdn,capacity_sdn\n";
    for (const CostPoint& p : report.curve) {
      out += std::to_string(p.n) + "," + number(p.capex_manet) + "," + number(p.capex_sdn) + "," +
             number(p.opex_manet) + "," + number(p.opex_sdn) + "," + number(p.capacity_sdn) + "\n";
    }
    return out;
  }
  json curve = json::array();
  for (const CostPoint& p : report.curve) {
    curve.push_back({{"n", p.n},
                     {"capex_manet", p.capex_manet},
                     {"capex_sdn", p.capex_sdn},
                     {"opex_manet", p.opex_manet},
                     {"opex_sdn", p.opex_sdn},
                     {"capacity_sdn", p.capacity_sdn}});
  }
  json breakeven = nullptr;
  if (report.capex_breakeven) breakeven = *report.capex_breakeven;
  const json doc = {
      {"curve", curve},
      {"capex_breakeven", breakeven},
      {"breakeven_defined", report.breakeven_defined},
      {"warnings", report.warnings},
      {"eta_opt", optional_number(report.eta_opt)},
      {"eta_source", report.eta_source},
      {"useful_bits", report.useful_bits},
      {"total_bits", report.total_bits},
      {"eta_sdn", optional_number(report.eta_sdn)},
      {"capacity_total", report.capacity_total},
      {"allocation", {{"bandwidth", report.allocation.bandwidth}, {"power", report.allocation.power}}},
      {"allocation_cost", report.allocation_cost},
      {"risk", report.risk},
      {"risk_after_quarantine", report.risk_after_quarantine},
  };
  return doc.dump(2) + "\n";
}

}  // namespace sdnmanet
