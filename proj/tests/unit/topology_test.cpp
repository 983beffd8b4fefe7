#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "scenarios.hpp"
#include "sdnmanet/topology.hpp"

namespace sdnmanet {
namespace {

using scenarios::A;
using scenarios::B;
using scenarios::C;
using scenarios::D;
using scenarios::E;

NodeState at(std::size_t id, double x, double y, double range = 100.0) {
  NodeState n;
  n.id = node_id(id);
  n.position = {x, y};
  n.waypoint = n.position;
  n.radio_range_m = range;
  return n;
}

std::vector<NodeId> ids(std::initializer_list<std::size_t> v) {
  std::vector<NodeId> out;
  for (std::size_t i : v) out.push_back(node_id(i));
  return out;
}

TEST(BuildLinks, NodesWithinRangeAreLinked) {
  const std::vector<NodeState> nodes = {at(0, 0, 0), at(1, 50, 0)};
  const auto links = build_links(nodes);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].a, node_id(0));
  EXPECT_EQ(links[0].b, node_id(1));
  EXPECT_EQ(links[0].weight, 1.0);
}

TEST(BuildLinks, NodesOutOfRangeAreNot) {
  const std::vector<NodeState> nodes = {at(0, 0, 0), at(1, 150, 0)};
  EXPECT_TRUE(build_links(nodes).empty());
}

TEST(BuildLinks, LineWithRangeOneAndAHalfSpacingIsAChain) {
  std::vector<NodeState> nodes;
  for (std::size_t i = 0; i < 5; ++i) nodes.push_back(at(i, 4.0 * i, 0, 6.0));
  const auto links = build_links(nodes);
  // Brute-force pairwise check.
  std::size_t expected = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      if (distance(nodes[i].position, nodes[j].position) <= 6.0) ++expected;
    }
  }
  EXPECT_EQ(expected, 4u);
  ASSERT_EQ(links.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(links[i].a, node_id(i));
    EXPECT_EQ(links[i].b, node_id(i + 1));
  }
}

TEST(BuildLinks, UsesTheSmallerOfTheTwoRanges) {
  const std::vector<NodeState> nodes = {at(0, 0, 0, 200.0), at(1, 120, 0, 100.0)};
  EXPECT_TRUE(build_links(nodes).empty());
}

TEST(BuildLinks, DistanceRuleScalesByRange) {
  const std::vector<NodeState> nodes = {at(0, 0, 0), at(1, 30, 40)};
  const auto links = build_links(nodes, {LinkWeightRule::kDistance, 1e6});
  ASSERT_EQ(links.size(), 1u);
  EXPECT_DOUBLE_EQ(links[0].weight, 0.5);
  EXPECT_EQ(links[0].capacity_bps, 1e6);
}

TEST(BuildLinks, EmptyInput) { EXPECT_TRUE(build_links({}).empty()); }

TEST(Snapshot, RejectsSelfLinksAndDuplicates) {
  std::vector<NodeState> nodes = {at(0, 0, 0), at(1, 1, 0)};
  Link self;
  self.a = self.b = node_id(0);
  EXPECT_THROW(TopologySnapshot(0, nodes, {self}), std::invalid_argument);
  Link l;
  l.a = node_id(0);
  l.b = node_id(1);
  Link r = l;
  std::swap(r.a, r.b);
  EXPECT_THROW(TopologySnapshot(0, nodes, {l, r}), std::invalid_argument);
}

TEST(Snapshot, SetLinkDownUpdatesDegreesAndNeighbors) {
  TopologySnapshot g = scenarios::five_node_graph();
  EXPECT_EQ(g.node(B).degree, 2);
  EXPECT_TRUE(g.set_link_up(B, C, false));
  EXPECT_EQ(g.node(B).degree, 1);
  EXPECT_EQ(g.neighbors(B), std::vector<NodeId>{A});
  EXPECT_FALSE(g.has_live_link(C, B));
  EXPECT_FALSE(g.set_link_up(A, E, false));
}

TEST(Mobility, PausedNodeStaysPut) {
  NodeState n = at(0, 10, 10);
  n.pause_remaining_ms = 500.0;
  RngStream rng(1, "mobility");
  advance_node(n, 200.0, {}, rng);
  EXPECT_EQ(n.position, (Vec2{10, 10}));
  EXPECT_DOUBLE_EQ(n.pause_remaining_ms, 300.0);
}

TEST(Mobility, MovesAtItsSpeedTowardTheWaypoint) {
  NodeState n = at(0, 100, 200);
  n.waypoint = {200, 200};
  n.speed_mps = 10.0;
  RngStream rng(1, "mobility");
  advance_node(n, 1000.0, {}, rng);
  EXPECT_DOUBLE_EQ(n.position.x, 110.0);
  EXPECT_DOUBLE_EQ(n.position.y, 200.0);
}

TEST(Mobility, ArrivalStartsThePause) {
  NodeState n = at(0, 0, 0);
  n.waypoint = {5, 0};
  n.speed_mps = 10.0;
  MobilityParams p;
  p.pause_ms = 2000.0;
  RngStream rng(1, "mobility");
  advance_node(n, 1000.0, p, rng);  // 500 ms to arrive, then pause
  EXPECT_EQ(n.position, (Vec2{5, 0}));
  EXPECT_DOUBLE_EQ(n.pause_remaining_ms, 1500.0);
}

TEST(Mobility, RejectsNonPositiveStep) {
  const TopologySnapshot g = scenarios::five_node_graph();
  RngStream rng(1, "mobility");
  EXPECT_THROW(step_mobility(g, 0.0, {}, {}, rng), std::invalid_argument);
}

TopologySnapshot random_field(std::uint64_t seed, std::size_t n) {
  RngStream rng(seed, "placement");
  std::vector<NodeState> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back(at(i, rng.uniform(0, 1000), rng.uniform(0, 1000), 250.0));
  }
  auto links = build_links(nodes);
  return TopologySnapshot(0.0, std::move(nodes), std::move(links));
}

TEST(Mobility, SameSeedSameTrajectory) {
  const auto run = [] {
    TopologySnapshot g = random_field(11, 10);
    RngStream rng(42, "mobility");
    std::vector<TopologySnapshot> trace;
    for (int i = 0; i < 100; ++i) {
      g = step_mobility(g, 100.0, {}, {}, rng);
      trace.push_back(g);
    }
    return trace;
  };
  EXPECT_EQ(run(), run());
}

TEST(MobilityProperty, BoundsDegreesAndSymmetryHoldEveryStep) {
  MobilityParams p;
  TopologySnapshot g = random_field(5, 25);
  RngStream rng(9, "mobility");
  for (int step = 0; step < 300; ++step) {
    g = step_mobility(g, 100.0, p, {}, rng);
    for (const NodeState& n : g.nodes()) {
      EXPECT_GE(n.position.x, 0.0);
      EXPECT_LE(n.position.x, p.width_m);
      EXPECT_GE(n.position.y, 0.0);
      EXPECT_LE(n.position.y, p.height_m);
      if (n.speed_mps != 0.0) {
        EXPECT_GE(n.speed_mps, p.speed_min_mps);
        EXPECT_LE(n.speed_mps, p.speed_max_mps);
      }
      int incident = 0;
      for (const Link& l : g.links()) incident += l.up && l.touches(n.id);
      EXPECT_EQ(n.degree, incident);
    }
    for (const Link& l : g.links()) {
      EXPECT_NE(l.a, l.b);
      EXPECT_TRUE(g.has_live_link(l.a, l.b));
      EXPECT_TRUE(g.has_live_link(l.b, l.a));
      EXPECT_LE(distance(g.node(l.a).position, g.node(l.b).position), 250.0);
    }
    ASSERT_FALSE(HasFailure()) << "step " << step;
  }
}

TEST(ShortestPath, DirectLinkWins) {
  const TopologySnapshot g = oracle::graph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  const auto p = shortest_path(g, node_id(0), node_id(1));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->hops, ids({0, 1}));
  EXPECT_EQ(p->total_weight, 1.0);
}

TEST(ShortestPath, FiveNodePrimaryRoute) {
  const TopologySnapshot g = scenarios::five_node_graph();
  const auto p = shortest_path(g, A, E);
  const auto best = oracle::enumerate_shortest(g, A, E);
  ASSERT_TRUE(p && best);
  EXPECT_EQ(p->hops, (std::vector<NodeId>{A, B, C, E}));
  EXPECT_EQ(p->total_weight, 3.0);
  EXPECT_EQ(p->hops, best->hops);
}

TEST(ShortestPath, FiveNodeFailover) {
  TopologySnapshot g = scenarios::five_node_graph();
  g.set_link_up(B, C, false);
  const auto p = shortest_path(g, A, E);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->hops, (std::vector<NodeId>{A, D, E}));
  EXPECT_EQ(p->total_weight, 6.0);
  EXPECT_EQ(oracle::enumerate_shortest(g, A, E)->cost, 6.0);
}

TEST(ShortestPath, PartitionIsNoRoute) {
  const TopologySnapshot g = oracle::graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_FALSE(shortest_path(g, node_id(0), node_id(3)));
}

TEST(ShortestPath, TieGoesToLexicographicallySmallestHops) {
  // 0-1-3 and 0-2-3 both cost 2.
  const TopologySnapshot g = oracle::graph(4, {{0, 2, 1.0}, {2, 3, 1.0}, {0, 1, 1.0}, {1, 3, 1.0}});
  EXPECT_EQ(shortest_path(g, node_id(0), node_id(3))->hops, ids({0, 1, 3}));
}

TEST(ShortestPath, ExcludedNodesAreAvoided) {
  const TopologySnapshot g = scenarios::five_node_graph();
  const std::vector<NodeId> bad = {B};
  PathOptions opts;
  opts.excluded = bad;
  EXPECT_EQ(shortest_path(g, A, E, opts)->hops, (std::vector<NodeId>{A, D, E}));
  const std::vector<NodeId> dst_bad = {E};
  opts.excluded = dst_bad;
  EXPECT_FALSE(shortest_path(g, A, E, opts));
}

TEST(ShortestPath, SourceEqualsDestinationIsRejected) {
  const TopologySnapshot g = scenarios::five_node_graph();
  EXPECT_THROW(shortest_path(g, A, A), std::invalid_argument);
}

TEST(ShortestPathProperty, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const TopologySnapshot g = oracle::random_connected_graph(rng, n, trial % 2 == 0);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = 0; d < n; ++d) {
        if (s == d) continue;
        const auto p = shortest_path(g, node_id(s), node_id(d));
        const auto best = oracle::enumerate_shortest(g, node_id(s), node_id(d));
        ASSERT_TRUE(p && best);
        ASSERT_EQ(p->total_weight, best->cost);
        ASSERT_EQ(p->hops, best->hops);
        ASSERT_EQ(path_cost(g, *p), p->total_weight);
      }
    }
  }
}

TEST(ShortestPathProperty, RemovingALinkNeverLowersCost) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 6;
    TopologySnapshot g = oracle::random_connected_graph(rng, n, false);
    const Link victim = g.links()[trial % g.links().size()];
    TopologySnapshot cut = g;
    cut.set_link_up(victim.a, victim.b, false);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = s + 1; d < n; ++d) {
        const auto before = shortest_path(g, node_id(s), node_id(d));
        const auto after = shortest_path(cut, node_id(s), node_id(d));
        if (after) ASSERT_GE(after->total_weight, before->total_weight);
      }
    }
  }
}

TEST(PathCost, EmptyPathCostsNothing) {
  const TopologySnapshot g = scenarios::five_node_graph();
  EXPECT_EQ(path_cost(g, Path{}), 0.0);
  EXPECT_EQ(path_cost(g, Path{{A}, 0.0}), 0.0);
}

TEST(PathCost, UnitWeights) {
  const TopologySnapshot g = scenarios::five_node_graph();
  EXPECT_EQ(path_cost(g, Path{{A, B, C, E}, 3.0}), 3.0);
}

TEST(PathCost, MixedWeights) {
  const TopologySnapshot g = oracle::graph(4, {{0, 1, 0.5}, {1, 2, 2.0}, {2, 3, 1.25}});
  const std::vector<double> w = {0.5, 2.0, 1.25};
  double fold = 0.0;
  for (double x : w) fold += x;
  const Path p = make_path(g, ids({0, 1, 2, 3}));
  EXPECT_EQ(path_cost(g, p), 3.75);
  EXPECT_EQ(path_cost(g, p), fold);
  EXPECT_EQ(p.total_weight, 3.75);
}

TEST(PathCost, MissingHopIsInvalid) {
  TopologySnapshot g = scenarios::five_node_graph();
  EXPECT_THROW(path_cost(g, Path{{A, C}, 0.0}), InvalidPath);
  g.set_link_up(A, B, false);
  EXPECT_THROW(path_cost(g, Path{{A, B}, 1.0}), InvalidPath);
  EXPECT_THROW(make_path(g, {A, B}), InvalidPath);
}

TopologySnapshot weighted_chain(const std::vector<std::pair<double, int>>& wd) {
  // Degrees are forced with pendant nodes hanging off each chain node.
  std::vector<oracle::Edge> edges;
  const std::size_t k = wd.size();
  for (std::size_t i = 1; i < k; ++i) edges.push_back({i - 1, i, 1.0});
  std::size_t next = k;
  for (std::size_t i = 0; i < k; ++i) {
    const int chain_degree = (i > 0) + (i + 1 < k);
    for (int extra = chain_degree; extra < wd[i].second; ++extra) edges.push_back({i, next++, 1.0});
  }
  TopologySnapshot g = oracle::graph(next, edges);
  std::vector<NodeState> nodes = g.nodes();
  for (std::size_t i = 0; i < k; ++i) nodes[i].node_weight = wd[i].first;
  return TopologySnapshot(0.0, nodes, g.links());
}

TEST(NodeObjective, ZeroWeightsCostNothing) {
  const TopologySnapshot g = weighted_chain({{0, 1}, {0, 1}});
  EXPECT_EQ(sdn_node_objective(g, make_path(g, ids({0, 1}))), 0.0);
}

TEST(NodeObjective, TwoUnitNodes) {
  const TopologySnapshot g = weighted_chain({{1, 1}, {1, 1}});
  EXPECT_EQ(sdn_node_objective(g, make_path(g, ids({0, 1}))), 2.0);
}

TEST(NodeObjective, ThreeNodesMatchFold) {
  const std::vector<std::pair<double, int>> wd = {{1, 2}, {2, 3}, {1, 1}};
  const TopologySnapshot g = weighted_chain(wd);
  double fold = 0.0;
  for (const auto& [w, d] : wd) fold += w * d;
  EXPECT_EQ(fold, 9.0);
  EXPECT_EQ(sdn_node_objective(g, make_path(g, ids({0, 1, 2}))), fold);
}

TEST(NodeObjective, SelectableAsPathObjective) {
  // Hub 1 has high load; 0-2-3 avoids it at equal hop count.
  std::vector<oracle::Edge> edges = {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1},
                                     {1, 4, 1}, {1, 5, 1}, {1, 6, 1}};
  const TopologySnapshot g = oracle::graph(7, edges);
  PathOptions opts;
  EXPECT_EQ(shortest_path(g, node_id(0), node_id(3), opts)->hops, ids({0, 1, 3}));
  opts.objective = PathObjective::kNodeLoad;
  EXPECT_EQ(shortest_path(g, node_id(0), node_id(3), opts)->hops, ids({0, 2, 3}));
}

}  // namespace
}  // namespace sdnmanet
