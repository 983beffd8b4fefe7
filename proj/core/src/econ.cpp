#include "sdnmanet/econ.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdnmanet::econ {

double NodeCosts::sum(std::size_t n) const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += at(i);
  return total;
}

namespace {

bool has_negative(const NodeCosts& c) {
  return c.uniform < 0.0 || std::any_of(c.per_node.begin(), c.per_node.end(),
                                        [](double v) { return v < 0.0; });
}

}  // namespace

void validate(const CostBook& book) {
  const std::pair<const char*, const NodeCosts*> columns[] = {
      {"hw_specialized", &book.hw_specialized},
      {"hw_generic", &book.hw_generic},
      {"sw", &book.sw},
      {"node_maintenance", &book.node_maintenance},
      {"node_configuration", &book.node_configuration},
      {"node_monitoring", &book.node_monitoring},
      {"node_reduced_maintenance", &book.node_reduced_maintenance},
  };
  for (const auto& [name, column] : columns) {
    if (has_negative(*column)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  }
  if (book.controller < 0.0 || book.controller_maintenance < 0.0 ||
      book.controller_configuration < 0.0 || book.controller_monitoring < 0.0) {
    throw std::invalid_argument("controller costs must be >= 0");
  }
}

std::vector<std::string> lint(const CostBook& book) {
  std::vector<std::string> warnings;
  const std::size_t n = std::max({book.hw_generic.per_node.size(),
                                  book.hw_specialized.per_node.size(), std::size_t{1}});
  for (std::size_t i = 0; i < n; ++i) {
    if (book.hw_generic.at(i) > book.hw_specialized.at(i)) {
      warnings.push_back("generic hardware cost exceeds specialized hardware cost at node " +
                         std::to_string(i));
      break;
    }
  }
  return warnings;
}

double capex_manet(const CostBook& book, std::size_t n) {
  return book.hw_specialized.sum(n) + book.sw.sum(n);
}

double capex_sdn(const CostBook& book, std::size_t n) {
  return book.hw_generic.sum(n) + book.controller;
}

std::optional<std::uint64_t> capex_breakeven(const CostBook& book) {
  if (!book.hw_specialized.is_uniform() || !book.hw_generic.is_uniform() || !book.sw.is_uniform()) {
    throw std::invalid_argument("capex_breakeven needs uniform per-node costs");
  }
  // Per-node saving of the controller design; the controller is paid off once
  // n * delta strictly exceeds its cost.
  const double delta = (book.hw_specialized.uniform - book.hw_generic.uniform) + book.sw.uniform;
  if (!(delta > 0.0)) return std::nullopt;
  const double c = book.controller;
  auto n = static_cast<std::uint64_t>(std::floor(c / delta)) + 1;
  // Guard the floor against rounding in c / delta.
  while (n > 1 && static_cast<double>(n - 1) * delta > c) --n;
  while (!(static_cast<double>(n) * delta > c)) ++n;
  return n;
}

double opex_manet(const CostBook& book, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += book.node_maintenance.at(i) + book.node_configuration.at(i) +
             book.node_monitoring.at(i);
  }
  return total;
}

double opex_sdn(const CostBook& book, std::size_t n) {
  return book.controller_maintenance + book.controller_configuration +
         book.controller_monitoring + book.node_reduced_maintenance.sum(n);
}

double efficiency_sdn(double useful_bits, double total_bits, double eta_opt) {
  if (total_bits == 0.0) throw ZeroDenominator("efficiency_sdn: total bandwidth is zero");
  return useful_bits / total_bits * eta_opt;
}

std::vector<double> water_fill(const std::vector<double>& demands, double total) {
  const std::size_t n = demands.size();
  std::vector<double> share(n, 0.0);
  if (n == 0) return share;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return demands[l] < demands[r]; });

  double remaining = std::max(total, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double level = remaining / static_cast<double>(n - k);
    const std::size_t i = order[k];
    if (demands[i] <= level) {
      share[i] = demands[i];
      remaining -= demands[i];
      continue;
    }
    // Every remaining node wants more than the level: they all get it.
    for (std::size_t j = k; j < n; ++j) share[order[j]] = level;
    break;
  }
  return share;
}

Allocation allocate_resources(const ResourcePool& pool) {
  std::vector<double> bw;
  std::vector<double> pw;
  bw.reserve(pool.demands.size());
  pw.reserve(pool.demands.size());
  for (const Demand& d : pool.demands) {
    bw.push_back(d.bandwidth);
    pw.push_back(d.power);
  }
  return {water_fill(bw, pool.bandwidth_total), water_fill(pw, pool.power_total)};
}

double allocation_cost(const Allocation& allocation, const ResourcePool& pool) {
  double cost = 0.0;
  for (double b : allocation.bandwidth) cost += b / pool.bandwidth_total;
  for (double p : allocation.power) cost += p / pool.power_total;
  return cost;
}

double security_risk(const VulnerabilityProfile& profile, const std::set<NodeId>& quarantined) {
  double risk = 0.0;
  for (const Vulnerability& v : profile) {
    if (quarantined.contains(v.host)) continue;
    risk += v.probability * v.impact;
  }
  return risk;
}

double capacity_sdn(const CapacityBook& book, std::size_t n) {
  return book.node.sum(n) + book.controller;
}

double capacity_total(const CapacityBook& book) { return book.clustered + book.sliced; }

}  // namespace sdnmanet::econ
