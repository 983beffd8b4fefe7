#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdnmanet/types.hpp"

// Cost, efficiency, capacity, allocation and risk models for reactive versus
// controller-managed ad hoc networks. Every function here is pure.
namespace sdnmanet::econ {

/// A per-node cost column: explicit values for the first nodes, a uniform
/// value for every node past the end of the list.
struct NodeCosts {
  double uniform = 0.0;
  std::vector<double> per_node;

  double at(std::size_t i) const noexcept { return i < per_node.size() ? per_node[i] : uniform; }
  bool is_uniform() const noexcept { return per_node.empty(); }

  /// Sum over nodes 0..n-1.
  double sum(std::size_t n) const noexcept;

  friend bool operator==(const NodeCosts&, const NodeCosts&) = default;
};

struct CostBook {
  NodeCosts hw_specialized;  // routing-capable node hardware
  NodeCosts hw_generic;      // general-purpose node hardware under a controller
  NodeCosts sw;              // per-node routing/management software
  double controller = 0.0;

  NodeCosts node_maintenance;
  NodeCosts node_configuration;
  NodeCosts node_monitoring;
  double controller_maintenance = 0.0;
  double controller_configuration = 0.0;
  double controller_monitoring = 0.0;
  NodeCosts node_reduced_maintenance;

  friend bool operator==(const CostBook&, const CostBook&) = default;
};

/// Non-fatal findings about a cost book (e.g. generic hardware priced above
/// specialized hardware). Negative costs are errors, not warnings.
std::vector<std::string> lint(const CostBook& book);

/// Throws std::invalid_argument when any cost is negative.
void validate(const CostBook& book);

double capex_manet(const CostBook& book, std::size_t n);
double capex_sdn(const CostBook& book, std::size_t n);

/// Smallest node count at which the controller-based network is strictly
/// cheaper to build. std::nullopt when it never is. Uses uniform costs.
std::optional<std::uint64_t> capex_breakeven(const CostBook& book);

double opex_manet(const CostBook& book, std::size_t n);
double opex_sdn(const CostBook& book, std::size_t n);

class ZeroDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (useful / total) * eta_opt. eta_opt < 1 is accepted but unusual.
double efficiency_sdn(double useful_bits, double total_bits, double eta_opt);

struct Demand {
  double bandwidth = 0.0;
  double power = 0.0;

  friend bool operator==(const Demand&, const Demand&) = default;
};

struct ResourcePool {
  double bandwidth_total = 1.0;
  double power_total = 1.0;
  std::vector<Demand> demands;

  friend bool operator==(const ResourcePool&, const ResourcePool&) = default;
};

struct Allocation {
  std::vector<double> bandwidth;
  std::vector<double> power;
};

/// Max-min fair share of `total` over `demands`: nobody exceeds its demand,
/// and nodes whose demand is not met all receive the same water level.
std::vector<double> water_fill(const std::vector<double>& demands, double total);

/// Independent water-filling for bandwidth and power.
Allocation allocate_resources(const ResourcePool& pool);

/// Sum over nodes of B_i / B_total + P_i / P_total.
double allocation_cost(const Allocation& allocation, const ResourcePool& pool);

struct Vulnerability {
  double probability = 0.0;
  double impact = 0.0;
  NodeId host{};

  friend bool operator==(const Vulnerability&, const Vulnerability&) = default;
};

using VulnerabilityProfile = std::vector<Vulnerability>;

/// Sum of probability * impact over vulnerabilities on non-quarantined hosts.
double security_risk(const VulnerabilityProfile& profile, const std::set<NodeId>& quarantined = {});

struct CapacityBook {
  NodeCosts node;  // per-node capacity
  double controller = 0.0;
  double clustered = 0.0;
  double sliced = 0.0;

  friend bool operator==(const CapacityBook&, const CapacityBook&) = default;
};

double capacity_sdn(const CapacityBook& book, std::size_t n);
double capacity_total(const CapacityBook& book);

}  // namespace sdnmanet::econ
