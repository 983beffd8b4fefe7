#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "sdnmanet/types.hpp"

namespace sdnmanet {

/// Exact (source, destination) match.
struct FlowMatch {
  NodeId src{};
  NodeId dst{};

  friend auto operator<=>(const FlowMatch&, const FlowMatch&) = default;
};

enum class FlowActionKind { kForward, kDrop };

struct FlowAction {
  FlowActionKind kind = FlowActionKind::kDrop;
  NodeId next_hop{};

  static FlowAction forward(NodeId next) { return {FlowActionKind::kForward, next}; }
  static FlowAction drop() { return {FlowActionKind::kDrop, NodeId{}}; }
  bool is_forward() const noexcept { return kind == FlowActionKind::kForward; }

  friend bool operator==(const FlowAction&, const FlowAction&) = default;
};

namespace priority {
inline constexpr int kLow = 1;
inline constexpr int kMedium = 5;
inline constexpr int kHigh = 10;
inline constexpr int kQuarantine = 100;
}  // namespace priority

struct FlowEntry {
  FlowMatch match;
  FlowAction action;
  int priority = priority::kHigh;
  SimTime installed_at = 0.0;
  SimTime last_used = 0.0;
  SimTime idle_timeout_ms = kNever;
  SimTime hard_timeout_ms = kNever;

  bool expired(SimTime now) const noexcept {
    return now - installed_at >= hard_timeout_ms || now - last_used >= idle_timeout_ms;
  }
  friend bool operator==(const FlowEntry&, const FlowEntry&) = default;
};

/// Match/action/priority forwarding state of one node.
class FlowTable {
 public:
  explicit FlowTable(NodeId owner = NodeId{}) : owner_(owner) {}

  NodeId owner() const noexcept { return owner_; }
  const std::vector<FlowEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Adds entry, replacing any entry with the same match and priority.
  void install(const FlowEntry& entry);
  /// Removes the entry with this match and priority. Returns true if found.
  bool remove(const FlowMatch& match, int priority);
  /// Drops entries whose idle or hard timeout has passed.
  std::size_t expire(SimTime now);
  /// Marks the winning entry for (src, dst) as used at `now`.
  void touch(NodeId src, NodeId dst, SimTime now);

 private:
  NodeId owner_;
  std::vector<FlowEntry> entries_;
};

/// Highest-priority entry matching (src, dst); on equal priority the most
/// recently installed entry wins. std::nullopt is a table miss.
std::optional<FlowEntry> match_flow(const FlowTable& table, NodeId src, NodeId dst);

}  // namespace sdnmanet
