#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sdnmanet/flow_table.hpp"

namespace sdnmanet {
namespace {

constexpr NodeId A = node_id(0);
constexpr NodeId C = node_id(2);
constexpr NodeId D = node_id(3);
constexpr NodeId E = node_id(4);
constexpr NodeId F = node_id(5);

FlowEntry entry(NodeId src, NodeId dst, FlowAction action, int prio, SimTime at = 0.0) {
  FlowEntry e;
  e.match = {src, dst};
  e.action = action;
  e.priority = prio;
  e.installed_at = e.last_used = at;
  return e;
}

// Node B's table from the flow table example: (A,E) -> C high, (D,F) -> E medium.
FlowTable table_at_b() {
  FlowTable t(node_id(1));
  t.install(entry(A, E, FlowAction::forward(C), priority::kHigh));
  t.install(entry(D, F, FlowAction::forward(E), priority::kMedium));
  return t;
}

TEST(MatchFlow, ExampleTableForwardsToC) {
  const auto hit = match_flow(table_at_b(), A, E);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->action, FlowAction::forward(C));
  EXPECT_EQ(hit->priority, priority::kHigh);
}

TEST(MatchFlow, ExampleTableSecondRow) {
  const auto hit = match_flow(table_at_b(), D, F);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->action, FlowAction::forward(E));
  EXPECT_EQ(hit->priority, priority::kMedium);
}

TEST(MatchFlow, EmptyTableMisses) {
  EXPECT_FALSE(match_flow(FlowTable{}, A, E));
  EXPECT_FALSE(match_flow(table_at_b(), E, A));
}

TEST(MatchFlow, HigherPriorityWins) {
  FlowTable t;
  t.install(entry(A, E, FlowAction::forward(C), 5));
  t.install(entry(A, E, FlowAction::drop(), 9));
  EXPECT_EQ(match_flow(t, A, E)->priority, 9);
  EXPECT_FALSE(match_flow(t, A, E)->action.is_forward());
}

TEST(FlowTable, SameMatchAndPriorityReplaces) {
  FlowTable t;
  t.install(entry(A, E, FlowAction::forward(C), 5, 10.0));
  t.install(entry(A, E, FlowAction::forward(D), 5, 20.0));
  EXPECT_EQ(t.entries().size(), 1u);
  EXPECT_EQ(match_flow(t, A, E)->action, FlowAction::forward(D));
}

TEST(FlowTable, RemoveAndExpire) {
  FlowTable t = table_at_b();
  EXPECT_TRUE(t.remove({A, E}, priority::kHigh));
  EXPECT_FALSE(t.remove({A, E}, priority::kHigh));
  FlowEntry idle = entry(A, E, FlowAction::forward(C), 1, 0.0);
  idle.idle_timeout_ms = 100.0;
  t.install(idle);
  t.touch(A, E, 80.0);
  EXPECT_EQ(t.expire(150.0), 0u);
  EXPECT_EQ(t.expire(180.0), 1u);
  EXPECT_FALSE(match_flow(t, A, E));
}

TEST(MatchFlowProperty, InvariantUnderInstallOrder) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FlowEntry> entries;
    for (int k = 0; k < 12; ++k) {
      const NodeId src = node_id(rng() % 3);
      const NodeId dst = node_id(3 + rng() % 2);
      const int prio = static_cast<int>(rng() % 4);
      const double at = static_cast<double>(k);  // distinct install times
      entries.push_back(entry(src, dst, FlowAction::forward(node_id(10 + k)), prio, at));
    }
    // Keep only the last writer per (match, priority) so every order yields the same set.
    std::vector<FlowEntry> unique;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      const bool seen = std::any_of(unique.begin(), unique.end(), [&](const FlowEntry& u) {
        return u.match == it->match && u.priority == it->priority;
      });
      if (!seen) unique.push_back(*it);
    }
    FlowTable reference;
    for (const FlowEntry& e : unique) reference.install(e);
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(unique.begin(), unique.end(), rng);
      FlowTable shuffled;
      for (const FlowEntry& e : unique) shuffled.install(e);
      for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t d = 3; d < 5; ++d) {
          ASSERT_EQ(match_flow(shuffled, node_id(s), node_id(d)),
                    match_flow(reference, node_id(s), node_id(d)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace sdnmanet
