#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sdnmanet/rng.hpp"
#include "sdnmanet/types.hpp"

namespace sdnmanet {

struct NodeState {
  NodeId id{};
  Vec2 position;
  Vec2 waypoint;
  double speed_mps = 0.0;
  SimTime pause_remaining_ms = 0.0;
  double radio_range_m = 0.0;
  int degree = 0;
  double node_weight = 1.0;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Undirected wireless link. Endpoints are stored canonically (a < b).
struct Link {
  NodeId a{};
  NodeId b{};
  double weight = 1.0;
  double capacity_bps = 2e6;
  bool up = true;

  bool joins(NodeId x, NodeId y) const noexcept {
    return (a == x && b == y) || (a == y && b == x);
  }
  bool touches(NodeId x) const noexcept { return a == x || b == x; }
  NodeId other(NodeId x) const noexcept { return a == x ? b : a; }

  friend bool operator==(const Link&, const Link&) = default;
};

enum class LinkWeightRule { kUnit, kDistance };

struct LinkModel {
  LinkWeightRule weight_rule = LinkWeightRule::kUnit;
  double capacity_bps = 2e6;
};

struct MobilityParams {
  bool enabled = true;
  double width_m = 1000.0;
  double height_m = 1000.0;
  double speed_min_mps = 1.0;
  double speed_max_mps = 10.0;
  SimTime pause_ms = 2000.0;
};

/// The network graph at one instant.
class TopologySnapshot {
 public:
  TopologySnapshot() = default;
  TopologySnapshot(SimTime time, std::vector<NodeState> nodes,
                   std::vector<Link> links);

  SimTime time() const noexcept { return time_; }
  void set_time(SimTime t) noexcept { time_ = t; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<NodeState>& nodes() const noexcept { return nodes_; }
  const NodeState& node(NodeId id) const { return nodes_.at(index_of(id)); }
  bool contains(NodeId id) const noexcept { return index_of(id) < nodes_.size(); }

  /// All links, live or not, sorted by (a, b).
  const std::vector<Link>& links() const noexcept { return links_; }

  /// Link record joining x and y, or nullptr. Does not check liveness.
  const Link* find_link(NodeId x, NodeId y) const;
  bool has_live_link(NodeId x, NodeId y) const;

  /// Live neighbors of id in ascending order.
  const std::vector<NodeId>& neighbors(NodeId id) const {
    return adjacency_.at(index_of(id));
  }

  /// Marks an existing link up or down. Returns false if no such link.
  bool set_link_up(NodeId x, NodeId y, bool up);

  friend bool operator==(const TopologySnapshot& l, const TopologySnapshot& r) {
    return l.time_ == r.time_ && l.nodes_ == r.nodes_ && l.links_ == r.links_;
  }

 private:
  void reindex();

  SimTime time_ = 0.0;
  std::vector<NodeState> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Unit-disk links: every pair within the smaller of the two radio ranges.
std::vector<Link> build_links(std::span<const NodeState> nodes,
                              const LinkModel& model = {});

/// Random-waypoint update of every node over dt, then links and degrees
/// are rebuilt from the new positions.
TopologySnapshot step_mobility(const TopologySnapshot& snapshot, SimTime dt,
                               const MobilityParams& params,
                               const LinkModel& model, RngStream& rng);

/// Moves a single node by dt under random waypoint. Exposed for tests.
void advance_node(NodeState& node, SimTime dt, const MobilityParams& params,
                  RngStream& rng);

struct Path {
  std::vector<NodeId> hops;
  double total_weight = 0.0;

  bool empty() const noexcept { return hops.size() < 2; }
  std::size_t hop_count() const noexcept {
    return hops.empty() ? 0 : hops.size() - 1;
  }
  bool visits(NodeId id) const noexcept;
  bool uses_link(NodeId x, NodeId y) const noexcept;

  friend bool operator==(const Path&, const Path&) = default;
};

enum class PathObjective {
  kLinkWeight,  // sum of w_ij over the path's links
  kNodeLoad,    // sum of w_i * d_i over the path's nodes
};

struct PathOptions {
  PathObjective objective = PathObjective::kLinkWeight;
  /// Nodes that may not appear anywhere on the path.
  std::span<const NodeId> excluded = {};
};

/// Minimum-cost simple path over live links. Among equal-cost optima the
/// lexicographically smallest hop sequence wins. std::nullopt means dst is
/// unreachable from src (a partition).
std::optional<Path> shortest_path(const TopologySnapshot& snapshot, NodeId src,
                                  NodeId dst, const PathOptions& options = {});

/// Sum of link weights along path. Throws InvalidPath on a missing hop.
double path_cost(const TopologySnapshot& snapshot, const Path& path);

/// Sum over nodes on path of node_weight * degree. Throws InvalidPath.
double sdn_node_objective(const TopologySnapshot& snapshot, const Path& path);

/// Builds a Path from a hop list, filling total_weight. Throws InvalidPath.
Path make_path(const TopologySnapshot& snapshot, std::vector<NodeId> hops);

}  // namespace sdnmanet
