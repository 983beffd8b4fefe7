#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace oracle {

using sdnmanet::node_id;

sdnmanet::TopologySnapshot graph(std::size_t n, const std::vector<Edge>& edges, double capacity_bps) {
  std::vector<sdnmanet::NodeState> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].id = node_id(i);
    nodes[i].radio_range_m = 1.0;
  }
  std::vector<sdnmanet::Link> links;
  for (const Edge& e : edges) {
    sdnmanet::Link l;
    l.a = node_id(std::min(e.a, e.b));
    l.b = node_id(std::max(e.a, e.b));
    l.weight = e.weight;
    l.capacity_bps = capacity_bps;
    links.push_back(l);
  }
  return sdnmanet::TopologySnapshot(0.0, std::move(nodes), std::move(links));
}

namespace {

void walk(const sdnmanet::TopologySnapshot& g, NodeId at, NodeId dst, std::vector<bool>& seen,
          std::vector<NodeId>& stack, const std::function<void(const std::vector<NodeId>&)>& visit) {
  if (at == dst) {
    visit(stack);
    return;
  }
  for (const sdnmanet::Link& link : g.links()) {
    if (!link.up || !link.touches(at)) continue;
    const NodeId next = link.other(at);
    if (seen[sdnmanet::index_of(next)]) continue;
    seen[sdnmanet::index_of(next)] = true;
    stack.push_back(next);
    walk(g, next, dst, seen, stack, visit);
    stack.pop_back();
    seen[sdnmanet::index_of(next)] = false;
  }
}

}  // namespace

std::vector<std::vector<NodeId>> all_simple_paths(const sdnmanet::TopologySnapshot& g, NodeId src,
                                                  NodeId dst) {
  std::vector<std::vector<NodeId>> out;
  std::vector<bool> seen(g.node_count(), false);
  seen[sdnmanet::index_of(src)] = true;
  std::vector<NodeId> stack{src};
  walk(g, src, dst, seen, stack, [&](const std::vector<NodeId>& p) { out.push_back(p); });
  return out;
}

std::optional<Best> enumerate_shortest(const sdnmanet::TopologySnapshot& g, NodeId src, NodeId dst,
                                       const std::vector<NodeId>& excluded) {
  std::optional<Best> best;
  for (const auto& hops : all_simple_paths(g, src, dst)) {
    if (std::any_of(hops.begin(), hops.end(), [&](NodeId h) {
          return std::find(excluded.begin(), excluded.end(), h) != excluded.end();
        })) {
      continue;
    }
    double cost = 0.0;
    for (std::size_t i = 1; i < hops.size(); ++i) cost += g.find_link(hops[i - 1], hops[i])->weight;
    if (!best || cost < best->cost || (cost == best->cost && hops < best->hops)) {
      best = Best{cost, hops};
    }
  }
  return best;
}

std::vector<double> water_fill_bisect(const std::vector<double>& demands, double total) {
  const double need = std::accumulate(demands.begin(), demands.end(), 0.0);
  if (need <= total) return demands;
  double lo = 0.0;
  double hi = *std::max_element(demands.begin(), demands.end());
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    double used = 0.0;
    for (double d : demands) used += std::min(d, mid);
    (used > total ? hi : lo) = mid;
  }
  std::vector<double> out;
  for (double d : demands) out.push_back(std::min(d, lo));
  return out;
}

sdnmanet::TopologySnapshot random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                                  bool integer_weights) {
  std::uniform_real_distribution<double> real(0.1, 10.0);
  std::uniform_int_distribution<int> small(1, 3);
  std::bernoulli_distribution extra(0.4);
  const auto weight = [&] { return integer_weights ? static_cast<double>(small(rng)) : real(rng); };
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> have(n, std::vector<bool>(n, false));
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    edges.push_back({parent, i, weight()});
    have[parent][i] = have[i][parent] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!have[i][j] && extra(rng)) edges.push_back({i, j, weight()});
    }
  }
  return graph(n, edges);
}

std::vector<nlohmann::json> parse_events(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

}  // namespace oracle
