#pragma once

#include "sdnmanet/scenario.hpp"

namespace scenarios {

// Node names of the five-node failover example.
inline constexpr sdnmanet::NodeId A = sdnmanet::node_id(0);
inline constexpr sdnmanet::NodeId B = sdnmanet::node_id(1);
inline constexpr sdnmanet::NodeId C = sdnmanet::node_id(2);
inline constexpr sdnmanet::NodeId D = sdnmanet::node_id(3);
inline constexpr sdnmanet::NodeId E = sdnmanet::node_id(4);

inline constexpr double kFiveNodeFailureMs = 10000.0;

/// Links A-B, B-C, C-E (weight 1) and A-D (weight 5, slow), D-E (weight 1);
/// one A->E flow from t = 1 s; B-C fails at kFiveNodeFailureMs.
sdnmanet::ScenarioConfig five_node(bool with_failure = true);

/// The same five-node graph as a bare snapshot.
sdnmanet::TopologySnapshot five_node_graph();

/// n static nodes on a line, spacing 100 m, range 150 m, one flow 0 -> n-1.
sdnmanet::ScenarioConfig static_line(int n, double duration_ms = 20000.0);

/// Default scenario family at a given seed.
sdnmanet::ScenarioConfig default_family(std::uint64_t seed);

}  // namespace scenarios
