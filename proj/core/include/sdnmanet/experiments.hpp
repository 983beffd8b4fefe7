#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sdnmanet/econ.hpp"
#include "sdnmanet/metrics.hpp"
#include "sdnmanet/scenario.hpp"

namespace sdnmanet {

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_format(const std::string& text);

struct PairedRun {
  MetricsReport manet;
  MetricsReport sdn;
  ComparisonTable table;
};

/// Both modes on the same config and seed.
PairedRun compare_modes(const ScenarioConfig& config);

struct SweepResult {
  std::vector<MetricsReport> runs;  // ordered by seed
  Summary summary;
};

/// Runs seeds first_seed .. first_seed + count - 1 on up to `threads`
/// workers (0: hardware concurrency). Output order never depends on the
/// thread count.
SweepResult sweep(const ScenarioConfig& config, Mode mode, std::uint64_t first_seed, int count,
                  unsigned threads = 0);

struct CostPoint {
  std::int64_t n = 0;
  double capex_manet = 0.0;
  double capex_sdn = 0.0;
  double opex_manet = 0.0;
  double opex_sdn = 0.0;
  double capacity_sdn = 0.0;
};

struct CostReport {
  std::vector<CostPoint> curve;
  std::optional<std::uint64_t> capex_breakeven;  // nullopt: never, or non-uniform costs
  bool breakeven_defined = true;                 // false when per-node costs differ
  std::vector<std::string> warnings;
  std::optional<double> eta_opt;
  std::string eta_source;  // "config" or "paired_runs"
  double useful_bits = 0.0;
  double total_bits = 0.0;
  std::optional<double> eta_sdn;
  double capacity_total = 0.0;
  econ::Allocation allocation;
  double allocation_cost = 0.0;
  double risk = 0.0;
  double risk_after_quarantine = 0.0;
};

/// Cost curves over [n_min, n_max] plus efficiency, capacity, allocation and
/// risk figures. Runs the paired simulation only when the config does not
/// already supply eta_opt and the bit counts.
CostReport cost_analysis(const ScenarioConfig& config);

std::string format_run(const MetricsReport& report, OutputFormat format);
std::string format_compare(const PairedRun& run, OutputFormat format);
std::string format_sweep(const SweepResult& result, OutputFormat format);
std::string format_cost(const CostReport& report, OutputFormat format);

}  // namespace sdnmanet
