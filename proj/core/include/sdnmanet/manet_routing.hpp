#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sdnmanet/topology.hpp"
#include "sdnmanet/types.hpp"

namespace sdnmanet {

enum class ControlKind { kRreq, kRrep, kRerr, kHello };

const char* to_string(ControlKind kind);

/// Simulated on-air sizes of reactive-routing control messages, in bytes.
struct ManetMessageSizes {
  int rreq = 64;
  int rrep = 64;
  int rerr = 64;
  int hello = 32;

  int of(ControlKind kind) const noexcept;
  friend bool operator==(const ManetMessageSizes&, const ManetMessageSizes&) = default;
};

struct ManetParams {
  ManetMessageSizes sizes;
  SimTime processing_ms = 1.0;
  SimTime active_route_timeout_ms = 3000.0;
};

/// One over-the-air control transmission.
struct ControlMessage {
  ControlKind kind = ControlKind::kRreq;
  NodeId origin{};
  NodeId target{};
  std::uint32_t rreq_id = 0;
  int hop_count = 0;
  int size_bytes = 0;
  NodeId sender{};
  std::optional<NodeId> receiver;  // nullopt: local broadcast
  SimTime sent_at = 0.0;
  std::vector<NodeId> unreachable;  // RERR only
};

struct RouteEntry {
  NodeId destination{};
  NodeId next_hop{};
  int hop_count = 1;
  std::uint32_t dest_sequence = 0;
  SimTime installed_at = 0.0;
  SimTime expiry = 0.0;
  bool valid = true;
  std::vector<NodeId> precursors;  // upstream neighbors using this route
};

struct DiscoveryRecord {
  NodeId src{};
  NodeId dst{};
  SimTime t_start = 0.0;
  SimTime t_end = 0.0;  // RREP receipt at src, or last flood transmission on failure
  int control_messages = 0;
  std::int64_t control_bytes = 0;
  int rreq_transmissions = 0;
  int rrep_transmissions = 0;
  bool found = false;

  SimTime duration() const noexcept { return t_end - t_start; }
};

struct RouteInstall {
  NodeId node{};
  RouteEntry entry;
};

struct DiscoveryResult {
  std::optional<Path> path;
  DiscoveryRecord record;
  std::vector<RouteInstall> installs;
  std::vector<ControlMessage> messages;
};

/// Simulates one route discovery on a static snapshot: RREQ flooding with
/// per-node duplicate suppression, a destination-only RREP unicast back along
/// the first-arrival reverse path, and timing from per-hop transmission plus
/// processing delay. Routes are returned, not installed.
DiscoveryResult discover_route(NodeId src, NodeId dst, const TopologySnapshot& snapshot,
                               const ManetParams& params, SimTime now,
                               std::uint32_t rreq_id = 1, std::uint32_t dest_sequence = 1);

inline DiscoveryResult discover_route(NodeId src, NodeId dst, const TopologySnapshot& snapshot,
                                      const ManetParams& params = {}) {
  return discover_route(src, dst, snapshot, params, snapshot.time());
}

/// Per-hop control delay over a link: serialization plus processing.
SimTime control_hop_delay(const Link& link, int size_bytes, SimTime processing_ms);

/// Routes lost at one node, and when that node learned of it.
struct RouteLossNotice {
  NodeId node{};
  std::vector<NodeId> destinations;
  SimTime at = 0.0;
};

struct LinkBreakResult {
  std::vector<ControlMessage> messages;
  std::vector<std::pair<NodeId, NodeId>> invalidated;  // (node, destination)
  std::vector<RouteLossNotice> notices;
};

/// Route tables and counters for every node in reactive mode.
class AodvNetwork {
 public:
  AodvNetwork(std::size_t node_count, ManetParams params);

  const ManetParams& params() const noexcept { return params_; }

  /// Runs discover_route with the source's next rreq_id and the
  /// destination's next sequence number. Counts the control traffic.
  DiscoveryResult discover(NodeId src, NodeId dst, const TopologySnapshot& snapshot,
                           SimTime now);

  /// Applies a discovery's installs. Fresher sequence numbers win; on equal
  /// sequence a shorter or previously invalid route wins.
  void install(const DiscoveryResult& result);
  bool offer(NodeId node, const RouteEntry& entry);

  /// Valid, unexpired route from node to dst, or nullptr.
  const RouteEntry* lookup(NodeId node, NodeId dst, SimTime now) const;
  /// Extends the route's lifetime after data is forwarded on it.
  void refresh(NodeId node, NodeId dst, SimTime now);

  /// Invalidates node's routes through broken_neighbor and relays RERR
  /// toward upstream precursors over live links until nodes without
  /// precursors are reached. Counts every RERR transmission. One notice is
  /// produced per node that lost routes, stamped with the RERR arrival time.
  LinkBreakResult handle_link_break(NodeId node, NodeId broken_neighbor,
                                    const TopologySnapshot& snapshot, SimTime now);

  void count_hello() { count(ControlKind::kHello, 1); }

  const std::map<NodeId, RouteEntry>& table(NodeId node) const {
    return tables_.at(index_of(node));
  }

  std::int64_t control_bytes() const noexcept { return control_bytes_; }
  std::int64_t messages(ControlKind kind) const { return messages_.at(static_cast<int>(kind)); }

 private:
  void count(ControlKind kind, int n);

  ManetParams params_;
  std::vector<std::map<NodeId, RouteEntry>> tables_;
  std::vector<std::uint32_t> next_rreq_id_;
  std::vector<std::uint32_t> sequence_;
  std::int64_t control_bytes_ = 0;
  std::vector<std::int64_t> messages_ = std::vector<std::int64_t>(4, 0);
};

/// Mean of per-node path costs over nodes holding an active route;
/// std::nullopt when there are none.
std::optional<double> avg_path_cost(std::span<const std::pair<NodeId, Path>> active_routes,
                                    const TopologySnapshot& snapshot);

}  // namespace sdnmanet
