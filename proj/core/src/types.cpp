#include "sdnmanet/types.hpp"

#include <cmath>
#include <stdexcept>

namespace sdnmanet {

double distance(Vec2 a, Vec2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

std::string to_string(Mode mode) { return mode == Mode::kManet ? "manet" : "sdn"; }

Mode parse_mode(const std::string& text) {
  if (text == "manet") return Mode::kManet;
  if (text == "sdn") return Mode::kSdn;
  throw std::invalid_argument("unknown mode '" + text + "' (expected manet|sdn)");
}

}  // namespace sdnmanet
