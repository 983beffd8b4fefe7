#include "sdnmanet/flow_table.hpp"

#include <algorithm>

namespace sdnmanet {

namespace {

const FlowEntry* winner(const std::vector<FlowEntry>& entries, NodeId src, NodeId dst) {
  const FlowEntry* best = nullptr;
  for (const FlowEntry& e : entries) {
    if (e.match.src != src || e.match.dst != dst) continue;
    if (best == nullptr || e.priority > best->priority ||
        (e.priority == best->priority && e.installed_at > best->installed_at)) {
      best = &e;
    }
  }
  return best;
}

}  // namespace

void FlowTable::install(const FlowEntry& entry) {
  for (FlowEntry& e : entries_) {
    if (e.match == entry.match && e.priority == entry.priority) {
      e = entry;
      return;
    }
  }
  entries_.push_back(entry);
}

bool FlowTable::remove(const FlowMatch& match, int priority) {
  return std::erase_if(entries_, [&](const FlowEntry& e) {
           return e.match == match && e.priority == priority;
         }) > 0;
}

std::size_t FlowTable::expire(SimTime now) {
  return std::erase_if(entries_, [now](const FlowEntry& e) { return e.expired(now); });
}

void FlowTable::touch(NodeId src, NodeId dst, SimTime now) {
  if (auto* e = const_cast<FlowEntry*>(winner(entries_, src, dst))) e->last_used = now;
}

std::optional<FlowEntry> match_flow(const FlowTable& table, NodeId src, NodeId dst) {
  if (const FlowEntry* e = winner(table.entries(), src, dst)) return *e;
  return std::nullopt;
}

}  // namespace sdnmanet
