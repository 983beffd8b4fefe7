#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace sdnmanet {

/// Index of a node within one scenario. Stable for the whole run.
enum class NodeId : std::uint32_t {};

constexpr NodeId node_id(std::size_t index) noexcept {
  return static_cast<NodeId>(static_cast<std::uint32_t>(index));
}
constexpr std::size_t index_of(NodeId id) noexcept {
  return static_cast<std::size_t>(id);
}

/// Simulated time and durations, in milliseconds.
using SimTime = double;

inline constexpr SimTime kNever = std::numeric_limits<double>::infinity();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b) noexcept;

enum class Mode { kManet, kSdn };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// A hop sequence names a link that is not live in the snapshot.
class InvalidPath : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sdnmanet

template <>
struct std::hash<sdnmanet::NodeId> {
  std::size_t operator()(sdnmanet::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(static_cast<std::uint32_t>(id));
  }
};
