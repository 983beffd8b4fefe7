#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "sdnmanet/flow_table.hpp"
#include "sdnmanet/manet_routing.hpp"
#include "sdnmanet/topology.hpp"

namespace sdnmanet {

struct SdnMessageSizes {
  int packet_in = 128;
  int flow_mod = 96;
  int status_report = 48;

  friend bool operator==(const SdnMessageSizes&, const SdnMessageSizes&) = default;
};

struct SdnParams {
  SimTime compute_ms = 5.0;          // per path computation
  SimTime control_delay_ms = 10.0;   // one-way, out-of-band
  SimTime status_interval_ms = 100.0;
  SimTime idle_timeout_ms = 5000.0;
  SimTime drop_timeout_ms = 1000.0;  // hard timeout of unreachable-destination drops
  bool reoptimize = true;            // move flows to strictly cheaper paths on link-up
  PathObjective objective = PathObjective::kLinkWeight;
  SdnMessageSizes sizes;
};

enum class FlowModCommand { kAdd, kDelete };

struct FlowMod {
  NodeId node{};
  FlowModCommand command = FlowModCommand::kAdd;
  FlowEntry entry;
};

/// Applies a flow-mod to the table it targets.
void apply_flow_mod(FlowTable& table, const FlowMod& mod);

/// Link-failure repair timing. total = t_detection + t_computation + t_update.
struct ReconfigRecord {
  SimTime t_detection = 0.0;
  SimTime t_computation = 0.0;
  SimTime t_update = 0.0;
  SimTime total = 0.0;
  int flows_affected = 0;
  int flows_unreachable = 0;
};

ReconfigRecord make_reconfig_record(SimTime detection, SimTime computation, SimTime update);

/// Reactive route repair timing measured at a flow source.
/// T_update = t_discovery + t_propagation + t_reconfiguration; a component is
/// absent until the repair reaches that stage.
struct RepairRecord {
  NodeId source{};
  NodeId destination{};
  SimTime failed_at = 0.0;
  std::optional<SimTime> t_propagation;      // failure -> source learns of it
  std::optional<SimTime> t_discovery;        // first RREQ -> RREP at source
  std::optional<SimTime> t_reconfiguration;  // RREP -> first data forwarded
};

class IncompleteRecord : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

SimTime routing_table_update_time(const ReconfigRecord& record);
SimTime routing_table_update_time(const RepairRecord& record);

/// Controller-side view of one (src, dst) flow.
struct FlowRecord {
  FlowMatch match;
  NodeId head{};               // node the path starts from
  std::optional<Path> path;    // nullopt: currently unreachable
};

struct ControllerDecision {
  std::vector<FlowMod> mods;
  int computations = 0;  // path computations performed
};

struct NeighborReport {
  NodeId neighbor{};
  double weight = 1.0;
  double capacity_bps = 2e6;

  friend bool operator==(const NeighborReport&, const NeighborReport&) = default;
};

struct ViewChange {
  std::vector<Link> went_down;
  std::vector<Link> came_up;
};

/// Centralized controller with a global (possibly lagging) topology view.
class Controller {
 public:
  Controller(const TopologySnapshot& initial_view, SdnParams params);

  const SdnParams& params() const noexcept { return params_; }
  const TopologySnapshot& view() const noexcept { return view_; }
  const std::map<FlowMatch, FlowRecord>& flows() const noexcept { return flows_; }
  const std::set<NodeId>& quarantined() const noexcept { return quarantined_; }

  /// Table miss at at_node for (src, dst): installs Forward entries along
  /// the computed path, or a short-lived Drop at at_node if unreachable.
  ControllerDecision packet_in(NodeId src, NodeId dst, NodeId at_node, SimTime now);

  /// Reroutes every flow crossing the failed link. The record's detection
  /// term is now - failed_at; computation and update terms come from the
  /// configured delays.
  std::pair<ControllerDecision, ReconfigRecord> handle_link_failure(NodeId a, NodeId b,
                                                                    SimTime failed_at,
                                                                    SimTime now);

  /// Routes unreachable flows again and, when enabled, moves flows onto
  /// strictly cheaper paths through the new link.
  ControllerDecision handle_link_up(SimTime now);

  /// Excludes bad_node from every path, reroutes flows through it, and drops
  /// traffic it sources at each of its neighbors.
  ControllerDecision quarantine_node(NodeId bad_node, SimTime now);

  /// Records a node's neighbor set. A link is in the view while both
  /// endpoints list each other.
  ViewChange apply_status_report(NodeId node, std::span<const NeighborReport> neighbors,
                                 SimTime now);

  using EntryKey = std::tuple<NodeId, FlowMatch, int>;  // (node, match, priority)

  // Control traffic seen by the controller: requests and reports received,
  // flow-mods issued.
  std::int64_t packet_ins() const noexcept { return packet_ins_; }
  std::int64_t status_reports() const noexcept { return status_reports_; }
  std::int64_t flow_mods() const noexcept { return flow_mods_; }
  std::int64_t control_bytes() const noexcept;

  /// Entries the controller believes are installed, from the mods it issued.
  const std::map<EntryKey, FlowEntry>& installed() const noexcept {
    return installed_;
  }

 private:
  std::optional<Path> compute(NodeId from, NodeId dst) const;
  double objective_cost(const Path& path) const;
  void reroute(FlowRecord& record, SimTime now, ControllerDecision& out,
               std::optional<std::optional<Path>> precomputed = std::nullopt);
  void purge_entries(const std::function<bool(const EntryKey&, const FlowEntry&)>& pred,
                     SimTime now, ControllerDecision& out);
  void add_forward(NodeId node, const FlowMatch& match, NodeId next, SimTime now,
                   ControllerDecision& out);
  void add_drop(NodeId node, const FlowMatch& match, int prio, SimTime hard_timeout,
                SimTime now, ControllerDecision& out);
  void remove(NodeId node, const FlowMatch& match, int prio, SimTime now,
              ControllerDecision& out);
  void rebuild_view();
  bool in_view(NodeId x, NodeId y) const;

  SdnParams params_;
  TopologySnapshot view_;
  std::vector<std::map<NodeId, NeighborReport>> reported_;
  std::map<FlowMatch, FlowRecord> flows_;
  std::set<NodeId> quarantined_;
  std::map<EntryKey, FlowEntry> installed_;
  std::int64_t packet_ins_ = 0;
  std::int64_t status_reports_ = 0;
  std::int64_t flow_mods_ = 0;
};

}  // namespace sdnmanet
