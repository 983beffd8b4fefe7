#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdnmanet/econ.hpp"
#include "sdnmanet/manet_routing.hpp"
#include "sdnmanet/sdn_control.hpp"
#include "sdnmanet/topology.hpp"

namespace sdnmanet {

struct TrafficFlow {
  NodeId src{};
  NodeId dst{};
  double rate_pps = 4.0;
  int packet_size_bytes = 512;
  SimTime start_ms = 0.0;
  SimTime end_ms = 0.0;  // 0: until the end of the run

  friend bool operator==(const TrafficFlow&, const TrafficFlow&) = default;
};

/// Random src/dst pairs drawn from the traffic stream.
struct RandomTraffic {
  int count = 10;
  double rate_pps = 4.0;
  int packet_size_bytes = 512;
  SimTime start_min_ms = 1000.0;
  SimTime start_max_ms = 5000.0;

  friend bool operator==(const RandomTraffic&, const RandomTraffic&) = default;
};

struct StaticNode {
  Vec2 position;
  double node_weight = 1.0;

  friend bool operator==(const StaticNode&, const StaticNode&) = default;
};

struct StaticLink {
  NodeId a{};
  NodeId b{};
  double weight = 1.0;
  std::optional<double> capacity_bps;

  friend bool operator==(const StaticLink&, const StaticLink&) = default;
};

/// Fixed layout. With `links` present connectivity comes from the list
/// instead of radio range.
struct StaticTopology {
  std::vector<StaticNode> nodes;
  std::optional<std::vector<StaticLink>> links;

  friend bool operator==(const StaticTopology&, const StaticTopology&) = default;
};

/// Scripted link state change that overrides geometry until reverted.
struct LinkEvent {
  SimTime time_ms = 0.0;
  NodeId a{};
  NodeId b{};
  bool up = false;

  friend bool operator==(const LinkEvent&, const LinkEvent&) = default;
};

struct QuarantineEvent {
  SimTime time_ms = 0.0;
  NodeId node{};

  friend bool operator==(const QuarantineEvent&, const QuarantineEvent&) = default;
};

struct ManetSettings {
  SimTime hello_interval_ms = 1000.0;
  int allowed_hello_loss = 2;
  SimTime active_route_timeout_ms = 3000.0;
  SimTime rreq_wait_ms = 1000.0;  // doubles on each retry
  int rreq_retries = 2;
  int buffer_limit = 64;          // packets awaiting a route, per node

  friend bool operator==(const ManetSettings&, const ManetSettings&) = default;
};

struct SdnSettings {
  SimTime controller_compute_ms = 5.0;
  SimTime control_delay_ms = 10.0;
  SimTime status_interval_ms = 100.0;
  SimTime idle_timeout_ms = 5000.0;
  SimTime drop_timeout_ms = 1000.0;
  bool reoptimize = true;
  PathObjective objective = PathObjective::kLinkWeight;
  int buffer_limit = 64;  // packets awaiting a flow-mod, per node

  friend bool operator==(const SdnSettings&, const SdnSettings&) = default;
};

struct MessageSizes {
  ManetMessageSizes manet;
  SdnMessageSizes sdn;

  friend bool operator==(const MessageSizes&, const MessageSizes&) = default;
};

struct CostAnalysis {
  std::int64_t n_min = 0;
  std::int64_t n_max = 50;
  std::optional<double> eta_opt;        // overrides the paired-run estimate
  std::optional<double> useful_bits;    // with total_bits: skip simulation
  std::optional<double> total_bits;

  friend bool operator==(const CostAnalysis&, const CostAnalysis&) = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  SimTime duration_ms = 300000.0;
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  int node_count = 25;
  double radio_range_m = 250.0;

  bool mobility_enabled = true;
  double speed_min_mps = 1.0;
  double speed_max_mps = 10.0;
  SimTime pause_ms = 2000.0;
  SimTime mobility_tick_ms = 100.0;

  double link_capacity_bps = 2e6;
  LinkWeightRule weight_rule = LinkWeightRule::kUnit;
  SimTime processing_ms = 1.0;
  int queue_limit = 50;
  int ttl = 32;

  std::vector<TrafficFlow> flows;
  RandomTraffic random_traffic;

  Mode mode = Mode::kManet;
  ManetSettings manet;
  SdnSettings sdn;
  MessageSizes message_sizes;

  std::optional<StaticTopology> topology;
  std::vector<LinkEvent> link_events;
  std::vector<QuarantineEvent> quarantine_events;

  econ::CostBook costs;
  econ::CapacityBook capacity;
  econ::VulnerabilityProfile vulnerabilities;
  econ::ResourcePool resources;
  CostAnalysis cost_analysis;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Every diagnostic found while parsing, each naming a field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates a JSON scenario document. Missing fields take
/// defaults (an empty document yields the default scenario family); unknown
/// keys and out-of-range values are errors. Throws ConfigError.
ScenarioConfig parse_config(std::string_view text);

/// Canonical JSON for a config; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Range and cross-field checks on an already-built config. Returns the
/// diagnostics, empty when valid.
std::vector<std::string> validate_config(const ScenarioConfig& config);

ManetParams manet_params(const ScenarioConfig& config);
SdnParams sdn_params(const ScenarioConfig& config);

}  // namespace sdnmanet
