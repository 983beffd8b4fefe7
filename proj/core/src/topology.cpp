#include "sdnmanet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdnmanet {

namespace {

bool link_less(const Link& l, const Link& r) {
  return l.a != r.a ? l.a < r.a : l.b < r.b;
}

}  // namespace

TopologySnapshot::TopologySnapshot(SimTime time, std::vector<NodeState> nodes,
                                   std::vector<Link> links)
    : time_(time), nodes_(std::move(nodes)), links_(std::move(links)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (index_of(nodes_[i].id) != i) {
      throw std::invalid_argument("node ids must equal their position in the node list");
    }
  }
  for (Link& link : links_) {
    if (link.a == link.b) throw std::invalid_argument("self-link");
    if (!contains(link.a) || !contains(link.b)) {
      throw std::invalid_argument("link endpoint outside the node set");
    }
    if (link.b < link.a) std::swap(link.a, link.b);
  }
  std::sort(links_.begin(), links_.end(), link_less);
  for (std::size_t i = 1; i < links_.size(); ++i) {
    if (links_[i - 1].a == links_[i].a && links_[i - 1].b == links_[i].b) {
      throw std::invalid_argument("duplicate link");
    }
  }
  reindex();
}

void TopologySnapshot::reindex() {
  adjacency_.assign(nodes_.size(), {});
  for (const Link& link : links_) {
    if (!link.up) continue;
    adjacency_[index_of(link.a)].push_back(link.b);
    adjacency_[index_of(link.b)].push_back(link.a);
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
    nodes_[i].degree = static_cast<int>(adjacency_[i].size());
  }
}

const Link* TopologySnapshot::find_link(NodeId x, NodeId y) const {
  Link key;
  key.a = std::min(x, y);
  key.b = std::max(x, y);
  auto it = std::lower_bound(links_.begin(), links_.end(), key, link_less);
  if (it != links_.end() && it->a == key.a && it->b == key.b) return &*it;
  return nullptr;
}

bool TopologySnapshot::has_live_link(NodeId x, NodeId y) const {
  const Link* link = find_link(x, y);
  return link != nullptr && link->up;
}

bool TopologySnapshot::set_link_up(NodeId x, NodeId y, bool up) {
  const Link* found = find_link(x, y);
  if (found == nullptr) return false;
  Link* link = links_.data() + (found - links_.data());
  if (link->up != up) {
    link->up = up;
    reindex();
  }
  return true;
}

std::vector<Link> build_links(std::span<const NodeState> nodes, const LinkModel& model) {
  std::vector<Link> links;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double range = std::min(nodes[i].radio_range_m, nodes[j].radio_range_m);
      const double d = distance(nodes[i].position, nodes[j].position);
      if (d > range) continue;
      Link link;
      link.a = std::min(nodes[i].id, nodes[j].id);
      link.b = std::max(nodes[i].id, nodes[j].id);
      link.capacity_bps = model.capacity_bps;
      link.weight = model.weight_rule == LinkWeightRule::kUnit
                        ? 1.0
                        : std::max(d / range, 1e-6);
      links.push_back(link);
    }
  }
  return links;
}

void advance_node(NodeState& node, SimTime dt, const MobilityParams& params, RngStream& rng) {
  SimTime remaining = dt;
  // Each pass either consumes the budget or completes one pause/leg, so the
  // bound only matters for degenerate zero-length legs.
  for (int guard = 0; remaining > 0.0 && guard < 64; ++guard) {
    if (node.pause_remaining_ms > 0.0) {
      if (node.pause_remaining_ms >= remaining) {
        node.pause_remaining_ms -= remaining;
        return;
      }
      remaining -= node.pause_remaining_ms;
      node.pause_remaining_ms = 0.0;
    }
    if (node.position == node.waypoint) {
      node.waypoint = {rng.uniform(0.0, params.width_m), rng.uniform(0.0, params.height_m)};
      node.speed_mps = rng.uniform(params.speed_min_mps, params.speed_max_mps);
    }
    if (node.speed_mps <= 0.0) return;

    const double dx = node.waypoint.x - node.position.x;
    const double dy = node.waypoint.y - node.position.y;
    const double dist = std::hypot(dx, dy);
    const double travel = node.speed_mps * remaining / 1000.0;
    if (travel < dist) {
      node.position.x += dx / dist * travel;
      node.position.y += dy / dist * travel;
      return;
    }
    remaining -= dist / node.speed_mps * 1000.0;
    node.position = node.waypoint;
    node.pause_remaining_ms = params.pause_ms;
  }
}

TopologySnapshot step_mobility(const TopologySnapshot& snapshot, SimTime dt,
                               const MobilityParams& params, const LinkModel& model,
                               RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_mobility: dt must be > 0");
  std::vector<NodeState> nodes = snapshot.nodes();
  if (params.enabled) {
    for (NodeState& node : nodes) advance_node(node, dt, params, rng);
  }
  auto links = build_links(nodes, model);
  return TopologySnapshot(snapshot.time() + dt, std::move(nodes), std::move(links));
}

bool Path::visits(NodeId id) const noexcept {
  return std::find(hops.begin(), hops.end(), id) != hops.end();
}

bool Path::uses_link(NodeId x, NodeId y) const noexcept {
  for (std::size_t i = 1; i < hops.size(); ++i) {
    if ((hops[i - 1] == x && hops[i] == y) || (hops[i - 1] == y && hops[i] == x)) return true;
  }
  return false;
}

namespace {

const Link& require_link(const TopologySnapshot& snapshot, NodeId x, NodeId y) {
  const Link* link = snapshot.find_link(x, y);
  if (link == nullptr || !link->up) {
    throw InvalidPath("no live link between " + std::to_string(index_of(x)) + " and " +
                      std::to_string(index_of(y)));
  }
  return *link;
}

double node_load(const TopologySnapshot& snapshot, NodeId id) {
  const NodeState& n = snapshot.node(id);
  return n.node_weight * n.degree;
}

}  // namespace

double path_cost(const TopologySnapshot& snapshot, const Path& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.hops.size(); ++i) {
    total += require_link(snapshot, path.hops[i - 1], path.hops[i]).weight;
  }
  return total;
}

double sdn_node_objective(const TopologySnapshot& snapshot, const Path& path) {
  for (std::size_t i = 1; i < path.hops.size(); ++i) {
    require_link(snapshot, path.hops[i - 1], path.hops[i]);
  }
  double total = 0.0;
  for (NodeId id : path.hops) {
    if (!snapshot.contains(id)) throw InvalidPath("unknown node on path");
    total += node_load(snapshot, id);
  }
  return total;
}

Path make_path(const TopologySnapshot& snapshot, std::vector<NodeId> hops) {
  Path path{std::move(hops), 0.0};
  path.total_weight = path_cost(snapshot, path);
  return path;
}

std::optional<Path> shortest_path(const TopologySnapshot& snapshot, NodeId src, NodeId dst,
                                  const PathOptions& options) {
  if (src == dst) throw std::invalid_argument("shortest_path: src == dst");
  if (!snapshot.contains(src) || !snapshot.contains(dst)) {
    throw std::out_of_range("shortest_path: unknown endpoint");
  }
  const std::size_t n = snapshot.node_count();
  std::vector<bool> blocked(n, false);
  for (NodeId id : options.excluded) {
    if (snapshot.contains(id)) blocked[index_of(id)] = true;
  }
  if (blocked[index_of(src)] || blocked[index_of(dst)]) return std::nullopt;

  // Dijkstra over (cost, hop sequence) labels ordered lexicographically. With
  // positive link costs the lexicographically smallest optimal path has
  // optimal-and-smallest prefixes, so the label of every settled node is the
  // tie-broken optimum.
  struct Label {
    double cost = kNever;
    std::vector<NodeId> hops;
  };
  auto better = [](double c1, const std::vector<NodeId>& h1, const Label& l) {
    if (c1 != l.cost) return c1 < l.cost;
    return std::lexicographical_compare(h1.begin(), h1.end(), l.hops.begin(), l.hops.end());
  };

  std::vector<Label> labels(n);
  std::vector<bool> settled(n, false);
  const bool by_node = options.objective == PathObjective::kNodeLoad;
  labels[index_of(src)] = {by_node ? node_load(snapshot, src) : 0.0, {src}};

  for (;;) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (settled[i] || labels[i].cost == kNever) continue;
      if (best == n || better(labels[i].cost, labels[i].hops, labels[best])) best = i;
    }
    if (best == n) return std::nullopt;
    settled[best] = true;
    if (best == index_of(dst)) break;

    const NodeId u = node_id(best);
    for (NodeId v : snapshot.neighbors(u)) {
      const std::size_t vi = index_of(v);
      if (settled[vi] || blocked[vi]) continue;
      const double step = by_node ? node_load(snapshot, v) : snapshot.find_link(u, v)->weight;
      const double cost = labels[best].cost + step;
      std::vector<NodeId> hops = labels[best].hops;
      hops.push_back(v);
      if (better(cost, hops, labels[vi])) labels[vi] = {cost, std::move(hops)};
    }
  }
  return make_path(snapshot, std::move(labels[index_of(dst)].hops));
}

}  // namespace sdnmanet
