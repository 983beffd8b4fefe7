#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sdnmanet/manet_routing.hpp"

namespace sdnmanet {
namespace {

std::vector<NodeId> ids(std::initializer_list<std::size_t> v) {
  std::vector<NodeId> out;
  for (std::size_t i : v) out.push_back(node_id(i));
  return out;
}

TopologySnapshot chain(std::size_t n) {
  std::vector<oracle::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({i - 1, i, 1.0});
  return oracle::graph(n, edges);
}

TEST(Discovery, ChainOfThree) {
  const TopologySnapshot g = chain(3);
  const DiscoveryResult r = discover_route(node_id(0), node_id(2), g);
  ASSERT_TRUE(r.path);
  EXPECT_TRUE(r.record.found);
  EXPECT_EQ(r.path->hops, ids({0, 1, 2}));
  EXPECT_EQ(r.record.rreq_transmissions, 2);
  EXPECT_EQ(r.record.rrep_transmissions, 2);
  EXPECT_EQ(r.record.control_messages, 4);
  EXPECT_EQ(r.record.control_bytes, 4 * 64);
  ASSERT_EQ(r.installs.size(), 2u);
  EXPECT_EQ(r.installs[0].node, node_id(0));
  EXPECT_EQ(r.installs[0].entry.hop_count, 2);
  EXPECT_EQ(r.installs[0].entry.next_hop, node_id(1));
  EXPECT_EQ(r.installs[1].node, node_id(1));
  EXPECT_EQ(r.installs[1].entry.hop_count, 1);
}

TEST(Discovery, TimingAccumulatesPerHopDelay) {
  const TopologySnapshot g = chain(3);
  ManetParams p;
  const DiscoveryResult r = discover_route(node_id(0), node_id(2), g, p, 100.0);
  // Four hops (two RREQ, two RREP) of 64 B at 2 Mb/s plus 1 ms processing.
  const double hop = 64 * 8.0 / 2e6 * 1000.0 + 1.0;
  EXPECT_DOUBLE_EQ(r.record.t_start, 100.0);
  EXPECT_DOUBLE_EQ(r.record.duration(), 4 * hop);
  EXPECT_DOUBLE_EQ(r.installs[0].entry.installed_at, r.record.t_end);
}

TEST(Discovery, IsolatedSourceFindsNoRoute) {
  const TopologySnapshot g = oracle::graph(3, {{1, 2, 1.0}});
  const DiscoveryResult r = discover_route(node_id(0), node_id(2), g);
  EXPECT_FALSE(r.path);
  EXPECT_FALSE(r.record.found);
  EXPECT_EQ(r.record.control_messages, 1);
  EXPECT_TRUE(r.installs.empty());
}

TEST(Discovery, CompleteGraphIsOneHop) {
  std::vector<oracle::Edge> edges;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) edges.push_back({a, b, 1.0});
  }
  const TopologySnapshot g = oracle::graph(4, edges);
  const DiscoveryResult r = discover_route(node_id(0), node_id(3), g);
  ASSERT_TRUE(r.path);
  EXPECT_EQ(r.path->hop_count(), 1u);
  EXPECT_EQ(r.installs.front().entry.hop_count, 1);
  EXPECT_LE(r.record.rreq_transmissions, 4);
}

TEST(Discovery, RejectsSameEndpoints) {
  EXPECT_THROW(discover_route(node_id(1), node_id(1), chain(3)), std::invalid_argument);
}

TEST(DiscoveryProperty, FloodRulesHoldOnRandomGraphs) {
  std::mt19937_64 rng(99);
  ManetParams p;
  p.sizes.rreq = 40;
  p.sizes.rrep = 24;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 9;
    TopologySnapshot g = oracle::random_connected_graph(rng, n, trial % 2 == 0);
    if (trial % 3 == 0) {
      const Link victim = g.links()[trial % g.links().size()];
      g.set_link_up(victim.a, victim.b, false);
    }
    const std::size_t s = trial % n;
    const NodeId src = node_id(s);
    const NodeId dst = node_id((s + 1 + (trial / 9) % (n - 1)) % n);
    const DiscoveryResult r = discover_route(src, dst, g, p, 0.0);

    // Each node retransmits at most once; the destination never does.
    std::set<NodeId> senders;
    std::int64_t bytes = 0;
    for (const ControlMessage& m : r.messages) {
      bytes += m.size_bytes;
      EXPECT_EQ(m.size_bytes, p.sizes.of(m.kind));
      if (m.kind != ControlKind::kRreq) continue;
      EXPECT_TRUE(senders.insert(m.sender).second);
      EXPECT_NE(m.sender, dst);
    }
    EXPECT_EQ(bytes, r.record.control_bytes);
    EXPECT_EQ(static_cast<int>(r.messages.size()), r.record.control_messages);
    EXPECT_GE(r.record.t_end, r.record.t_start);

    // Found iff reachable.
    const bool reachable = shortest_path(g, src, dst).has_value();
    EXPECT_EQ(r.path.has_value(), reachable);

    // Installed routes lead to dst without cycles and with decreasing hops.
    if (r.path) {
      std::map<NodeId, RouteEntry> next;
      for (const RouteInstall& i : r.installs) next[i.node] = i.entry;
      for (const auto& [start, entry] : next) {
        NodeId at = start;
        int hops = entry.hop_count;
        std::set<NodeId> visited;
        while (at != dst) {
          ASSERT_TRUE(visited.insert(at).second) << "loop at trial " << trial;
          const RouteEntry& e = next.at(at);
          EXPECT_EQ(e.hop_count, hops--);
          EXPECT_TRUE(g.has_live_link(at, e.next_hop));
          at = e.next_hop;
        }
      }
    }
    ASSERT_FALSE(HasFailure()) << "trial " << trial;
  }
}

TEST(AodvNetwork, LaterDiscoveriesUseFreshSequenceNumbers) {
  const TopologySnapshot g = chain(3);
  AodvNetwork net(3, {});
  const auto first = net.discover(node_id(0), node_id(2), g, 0.0);
  net.install(first);
  const auto second = net.discover(node_id(0), node_id(2), g, 10.0);
  EXPECT_GT(second.installs[0].entry.dest_sequence, first.installs[0].entry.dest_sequence);
  EXPECT_GT(second.messages[0].rreq_id, first.messages[0].rreq_id);
  EXPECT_EQ(net.control_bytes(), 8 * 64);
  EXPECT_EQ(net.messages(ControlKind::kRreq), 4);
}

TEST(AodvNetwork, LookupHonorsExpiryAndRefresh) {
  const TopologySnapshot g = chain(2);
  AodvNetwork net(2, {});
  net.install(net.discover(node_id(0), node_id(1), g, 0.0));
  const RouteEntry* e = net.lookup(node_id(0), node_id(1), 10.0);
  ASSERT_NE(e, nullptr);
  const SimTime expiry = e->expiry;
  EXPECT_EQ(net.lookup(node_id(0), node_id(1), expiry), nullptr);
  net.refresh(node_id(0), node_id(1), expiry - 1.0);
  EXPECT_NE(net.lookup(node_id(0), node_id(1), expiry), nullptr);
}

TEST(LinkBreak, NoAffectedRoutesIsEmpty) {
  const TopologySnapshot g = chain(3);
  AodvNetwork net(3, {});
  net.install(net.discover(node_id(0), node_id(1), g, 0.0));
  const LinkBreakResult r = net.handle_link_break(node_id(1), node_id(2), g, 5.0);
  EXPECT_TRUE(r.messages.empty());
  EXPECT_TRUE(r.invalidated.empty());
  EXPECT_EQ(net.messages(ControlKind::kRerr), 0);
}

TEST(LinkBreak, RelayedTwiceToASourceTwoHopsUpstream) {
  // 0 - 1 - 2 - 3; route 0 -> 3, link 2-3 breaks at node 2.
  TopologySnapshot g = chain(4);
  AodvNetwork net(4, {});
  net.install(net.discover(node_id(0), node_id(3), g, 0.0));
  g.set_link_up(node_id(2), node_id(3), false);
  const LinkBreakResult r = net.handle_link_break(node_id(2), node_id(3), g, 50.0);

  ASSERT_EQ(r.messages.size(), 2u);
  EXPECT_EQ(r.messages[0].sender, node_id(2));
  EXPECT_EQ(r.messages[1].sender, node_id(1));
  for (const ControlMessage& m : r.messages) {
    EXPECT_EQ(m.kind, ControlKind::kRerr);
    EXPECT_EQ(m.unreachable, ids({3}));
  }
  const std::vector<std::pair<NodeId, NodeId>> expected = {
      {node_id(2), node_id(3)}, {node_id(1), node_id(3)}, {node_id(0), node_id(3)}};
  EXPECT_EQ(r.invalidated, expected);
  ASSERT_EQ(r.notices.size(), 3u);
  EXPECT_EQ(r.notices.back().node, node_id(0));
  const double hop = 64 * 8.0 / 2e6 * 1000.0 + 1.0;
  EXPECT_DOUBLE_EQ(r.notices.back().at, 50.0 + 2 * hop);
  EXPECT_EQ(net.lookup(node_id(0), node_id(3), 60.0), nullptr);
  EXPECT_EQ(net.messages(ControlKind::kRerr), 2);
}

TEST(LinkBreak, SharedNextHopProducesOneRerr) {
  // 0 - 4 - 1 with 1 fanning out to 2 and 3; the 4-1 link breaks at 4.
  TopologySnapshot g = oracle::graph(5, {{0, 4, 1.0}, {4, 1, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}});
  AodvNetwork net(5, {});
  net.install(net.discover(node_id(4), node_id(2), g, 0.0));
  net.install(net.discover(node_id(4), node_id(3), g, 0.0));
  const LinkBreakResult r = net.handle_link_break(node_id(4), node_id(1), g, 10.0);
  EXPECT_TRUE(r.messages.empty());  // node 4 is the source: nobody upstream
  ASSERT_EQ(r.invalidated.size(), 2u);

  // Same routes seen one hop further downstream: 0 relays through 4.
  AodvNetwork relay(5, {});
  relay.install(relay.discover(node_id(0), node_id(2), g, 0.0));
  relay.install(relay.discover(node_id(0), node_id(3), g, 0.0));
  const LinkBreakResult s = relay.handle_link_break(node_id(4), node_id(1), g, 10.0);
  ASSERT_EQ(s.messages.size(), 1u);
  EXPECT_EQ(s.messages[0].unreachable, ids({2, 3}));
  EXPECT_EQ(s.messages[0].receiver, node_id(0));
  EXPECT_EQ(s.invalidated.size(), 4u);
  EXPECT_EQ(relay.lookup(node_id(0), node_id(2), 11.0), nullptr);
  EXPECT_EQ(relay.lookup(node_id(0), node_id(3), 11.0), nullptr);
  EXPECT_EQ(relay.lookup(node_id(4), node_id(2), 11.0), nullptr);
}

TEST(AvgPathCost, Examples) {
  // Disjoint single-link components with the weights under test.
  const TopologySnapshot g =
      oracle::graph(10, {{0, 1, 3.0}, {2, 3, 2.0}, {4, 5, 4.0}, {6, 7, 1.0}, {8, 9, 6.0}});
  const auto route = [&](std::size_t a, std::size_t b) {
    return std::pair{node_id(a), make_path(g, {node_id(a), node_id(b)})};
  };
  const std::vector<std::pair<NodeId, Path>> one = {route(0, 1)};
  EXPECT_EQ(avg_path_cost(one, g), 3.0);
  const std::vector<std::pair<NodeId, Path>> two = {route(2, 3), route(4, 5)};
  EXPECT_EQ(avg_path_cost(two, g), 3.0);
  const std::vector<std::pair<NodeId, Path>> three = {route(6, 7), route(2, 3), route(8, 9)};
  double sum = 0.0;
  for (double c : {1.0, 2.0, 6.0}) sum += c;
  EXPECT_EQ(avg_path_cost(three, g), sum / 3.0);
  EXPECT_EQ(avg_path_cost({}, g), std::nullopt);
}

}  // namespace
}  // namespace sdnmanet
