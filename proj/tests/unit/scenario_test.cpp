#include <gtest/gtest.h>

#include <random>

#include "sdnmanet/scenario.hpp"

namespace sdnmanet {
namespace {

std::vector<std::string> errors_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, std::string_view needle) {
  for (const std::string& e : errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ParseConfig, EmptyDocumentGivesTheDefaultFamily) {
  const ScenarioConfig c = parse_config("");
  EXPECT_EQ(c, ScenarioConfig{});
  EXPECT_EQ(c.node_count, 25);
  EXPECT_EQ(c.area_width_m, 1000.0);
  EXPECT_EQ(c.radio_range_m, 250.0);
  EXPECT_EQ(c.speed_min_mps, 1.0);
  EXPECT_EQ(c.speed_max_mps, 10.0);
  EXPECT_EQ(c.pause_ms, 2000.0);
  EXPECT_EQ(c.random_traffic.count, 10);
  EXPECT_EQ(c.random_traffic.rate_pps, 4.0);
  EXPECT_EQ(c.random_traffic.packet_size_bytes, 512);
  EXPECT_EQ(c.duration_ms, 300000.0);
  EXPECT_EQ(c.queue_limit, 50);
  EXPECT_EQ(c.ttl, 32);
  EXPECT_EQ(parse_config("  \n{}\n"), c);
}

TEST(ParseConfig, NegativeNodeCountNamesTheField) {
  const auto errors = errors_of(R"({"node_count": -1})");
  ASSERT_FALSE(errors.empty());
  EXPECT_TRUE(mentions(errors, "node_count"));
}

TEST(ParseConfig, UnknownKeysAreRejectedWithTheirPath) {
  EXPECT_TRUE(mentions(errors_of(R"({"nodes": 3})"), "nodes"));
  EXPECT_TRUE(mentions(errors_of(R"({"sdn": {"compute": 3}})"), "sdn.compute"));
}

TEST(ParseConfig, CollectsEveryError) {
  const auto errors = errors_of(
      R"({"duration_ms": 0, "mode": "mesh", "traffic": {"flows": [{"src": 0, "dst": 99}]}})");
  EXPECT_TRUE(mentions(errors, "duration_ms"));
  EXPECT_TRUE(mentions(errors, "mode"));
  EXPECT_TRUE(mentions(errors, "traffic.flows[0].dst"));
}

TEST(ParseConfig, MalformedJson) {
  EXPECT_FALSE(errors_of("{").empty());
  EXPECT_FALSE(errors_of("[1, 2]").empty());
}

TEST(ParseConfig, CrossFieldChecks) {
  EXPECT_TRUE(mentions(errors_of(R"({"mobility": {"speed_min_mps": 5, "speed_max_mps": 2}})"),
                       "speed"));
  EXPECT_TRUE(mentions(errors_of(R"({"node_count": 2, "traffic": {"flows": [{"src": 1, "dst": 1}]}})"),
                       "traffic.flows[0]"));
}

TEST(ParseConfig, ExplicitFields) {
  const ScenarioConfig c = parse_config(R"({
    "seed": 9, "mode": "sdn", "node_count": 3,
    "topology": {"nodes": [{"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 2, "y": 0, "node_weight": 2}],
                 "links": [{"a": 0, "b": 1}, {"a": 1, "b": 2, "weight": 3, "capacity_bps": 1e5}]},
    "traffic": {"flows": [{"src": 0, "dst": 2, "rate_pps": 2, "start_ms": 5}]},
    "costs": {"hw_specialized": [100, 120], "controller": 500},
    "link_events": [{"time_ms": 10, "a": 1, "b": 2, "up": false}]
  })");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.mode, Mode::kSdn);
  ASSERT_TRUE(c.topology && c.topology->links);
  EXPECT_EQ(c.topology->nodes[2].node_weight, 2.0);
  EXPECT_EQ((*c.topology->links)[1].capacity_bps, 1e5);
  EXPECT_EQ(c.flows.at(0).rate_pps, 2.0);
  EXPECT_EQ(c.costs.hw_specialized.at(0), 100.0);
  EXPECT_EQ(c.costs.hw_specialized.at(7), 120.0);
  EXPECT_EQ(c.link_events.at(0).b, node_id(2));
}

ScenarioConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  ScenarioConfig c;
  c.seed = rng();
  c.duration_ms = 1000.0 + std::floor(u(rng) * 1e6) / 8.0;
  c.node_count = 2 + pick(40);
  c.area_width_m = 100.0 + u(rng) * 2000.0;
  c.radio_range_m = 10.0 + u(rng) * 400.0;
  c.mobility_enabled = pick(2) == 0;
  c.speed_min_mps = u(rng) * 5.0;
  c.speed_max_mps = c.speed_min_mps + u(rng) * 20.0;
  c.weight_rule = pick(2) ? LinkWeightRule::kDistance : LinkWeightRule::kUnit;
  c.mode = pick(2) ? Mode::kSdn : Mode::kManet;
  c.sdn.objective = pick(2) ? PathObjective::kNodeLoad : PathObjective::kLinkWeight;
  c.sdn.reoptimize = pick(2) == 0;
  c.manet.rreq_retries = pick(5);
  c.message_sizes.manet.hello = 1 + pick(100);
  c.message_sizes.sdn.flow_mod = 1 + pick(300);
  for (int k = pick(4); k > 0; --k) {
    TrafficFlow f;
    f.src = node_id(pick(c.node_count));
    f.dst = node_id((index_of(f.src) + 1 + pick(c.node_count - 1)) % c.node_count);
    f.rate_pps = 0.5 + u(rng) * 10.0;
    f.start_ms = u(rng) * 100.0;
    f.end_ms = pick(2) ? 0.0 : f.start_ms + 1.0 + u(rng) * 100.0;
    c.flows.push_back(f);
  }
  c.random_traffic.count = pick(12);
  if (pick(3) == 0) {
    StaticTopology t;
    for (int i = 0; i < c.node_count; ++i) {
      t.nodes.push_back({{u(rng) * c.area_width_m, u(rng) * c.area_height_m}, 0.5 + u(rng)});
    }
    if (pick(2)) {
      t.links.emplace();
      for (int i = 1; i < c.node_count; ++i) {
        StaticLink l{node_id(i - 1), node_id(i), 0.5 + u(rng), std::nullopt};
        if (pick(2)) l.capacity_bps = 1e5 * (1 + pick(20));
        t.links->push_back(l);
      }
    }
    c.topology = t;
  }
  for (int k = pick(3); k > 0; --k) {
    c.link_events.push_back({u(rng) * 500.0, node_id(0), node_id(1), pick(2) == 0});
  }
  for (int k = pick(3); k > 0; --k) c.quarantine_events.push_back({u(rng) * 500.0, node_id(pick(c.node_count))});
  c.costs.hw_specialized = {u(rng) * 200.0, {}};
  if (pick(2)) c.costs.sw = {u(rng) * 80.0, {1.5, 2.25}};
  c.costs.controller = u(rng) * 1000.0;
  c.capacity.node = {u(rng) * 10.0, {}};
  c.capacity.sliced = u(rng);
  for (int k = pick(4); k > 0; --k) c.vulnerabilities.push_back({u(rng), u(rng) * 10.0, node_id(pick(c.node_count))});
  for (int k = pick(4); k > 0; --k) c.resources.demands.push_back({u(rng) * 5.0, u(rng) * 2.0});
  c.cost_analysis.n_max = 1 + pick(100);
  if (pick(2)) c.cost_analysis.eta_opt = 1.0 + u(rng);
  if (pick(2)) {
    c.cost_analysis.useful_bits = 1000.0 * u(rng);
    c.cost_analysis.total_bits = 2000.0 + u(rng);
  }
  return c;
}

TEST(ParseConfigProperty, SerializeRoundTrips) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const ScenarioConfig c = random_config(rng);
    ASSERT_EQ(validate_config(c), std::vector<std::string>{}) << "trial " << trial;
    const std::string text = serialize_config(c);
    const ScenarioConfig back = parse_config(text);
    ASSERT_EQ(back, c) << text;
    ASSERT_EQ(serialize_config(back), text);
  }
}

TEST(Params, CarryTheConfiguredValues) {
  ScenarioConfig c;
  c.message_sizes.manet.rreq = 77;
  c.processing_ms = 2.5;
  c.sdn.control_delay_ms = 12.0;
  EXPECT_EQ(manet_params(c).sizes.rreq, 77);
  EXPECT_EQ(manet_params(c).processing_ms, 2.5);
  EXPECT_EQ(sdn_params(c).control_delay_ms, 12.0);
}

}  // namespace
}  // namespace sdnmanet
