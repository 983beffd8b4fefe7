#include "sdnmanet/sdn_control.hpp"

#include <algorithm>

namespace sdnmanet {

void apply_flow_mod(FlowTable& table, const FlowMod& mod) {
  if (mod.command == FlowModCommand::kAdd) {
    table.install(mod.entry);
  } else {
    table.remove(mod.entry.match, mod.entry.priority);
  }
}

ReconfigRecord make_reconfig_record(SimTime detection, SimTime computation, SimTime update) {
  ReconfigRecord r;
  r.t_detection = detection;
  r.t_computation = computation;
  r.t_update = update;
  r.total = detection + computation + update;
  return r;
}

SimTime routing_table_update_time(const ReconfigRecord& record) {
  return record.t_detection + record.t_computation + record.t_update;
}

SimTime routing_table_update_time(const RepairRecord& record) {
  if (!record.t_discovery || !record.t_propagation || !record.t_reconfiguration) {
    throw IncompleteRecord("repair record is missing a timing component");
  }
  return *record.t_discovery + *record.t_propagation + *record.t_reconfiguration;
}

Controller::Controller(const TopologySnapshot& initial_view, SdnParams params)
    : params_(params), view_(initial_view), reported_(initial_view.node_count()) {
  for (const Link& link : view_.links()) {
    if (!link.up) continue;
    reported_[index_of(link.a)][link.b] = {link.b, link.weight, link.capacity_bps};
    reported_[index_of(link.b)][link.a] = {link.a, link.weight, link.capacity_bps};
  }
  rebuild_view();
}

std::int64_t Controller::control_bytes() const noexcept {
  return packet_ins_ * params_.sizes.packet_in + status_reports_ * params_.sizes.status_report +
         flow_mods_ * params_.sizes.flow_mod;
}

bool Controller::in_view(NodeId x, NodeId y) const {
  return reported_[index_of(x)].contains(y) && reported_[index_of(y)].contains(x);
}

void Controller::rebuild_view() {
  std::vector<Link> links;
  for (std::size_t x = 0; x < reported_.size(); ++x) {
    for (const auto& [y, report] : reported_[x]) {
      if (index_of(y) <= x || !in_view(node_id(x), y)) continue;
      Link link;
      link.a = node_id(x);
      link.b = y;
      link.weight = report.weight;
      link.capacity_bps = report.capacity_bps;
      links.push_back(link);
    }
  }
  view_ = TopologySnapshot(view_.time(), view_.nodes(), std::move(links));
}

ViewChange Controller::apply_status_report(NodeId node, std::span<const NeighborReport> neighbors,
                                           SimTime now) {
  ++status_reports_;
  const std::size_t n = reported_.size();
  std::vector<bool> before(n);
  for (std::size_t y = 0; y < n; ++y) before[y] = y != index_of(node) && in_view(node, node_id(y));
  std::map<NodeId, NeighborReport> fresh;
  for (const NeighborReport& r : neighbors) fresh[r.neighbor] = r;

  ViewChange change;
  for (std::size_t y = 0; y < n; ++y) {
    if (!before[y]) continue;
    if (!fresh.contains(node_id(y))) {
      if (const Link* link = view_.find_link(node, node_id(y))) change.went_down.push_back(*link);
    }
  }
  reported_[index_of(node)] = std::move(fresh);
  for (std::size_t y = 0; y < n; ++y) {
    if (y == index_of(node) || before[y] || !in_view(node, node_id(y))) continue;
    const NeighborReport& r = reported_[index_of(node)].at(node_id(y));
    Link link;
    link.a = std::min(node, node_id(y));
    link.b = std::max(node, node_id(y));
    link.weight = r.weight;
    link.capacity_bps = r.capacity_bps;
    change.came_up.push_back(link);
  }
  if (!change.went_down.empty() || !change.came_up.empty()) rebuild_view();
  view_.set_time(now);
  return change;
}

std::optional<Path> Controller::compute(NodeId from, NodeId dst) const {
  if (from == dst) return std::nullopt;
  std::vector<NodeId> excluded(quarantined_.begin(), quarantined_.end());
  PathOptions options;
  options.objective = params_.objective;
  options.excluded = excluded;
  return shortest_path(view_, from, dst, options);
}

double Controller::objective_cost(const Path& path) const {
  return params_.objective == PathObjective::kNodeLoad ? sdn_node_objective(view_, path)
                                                       : path_cost(view_, path);
}

void Controller::add_forward(NodeId node, const FlowMatch& match, NodeId next, SimTime now,
                             ControllerDecision& out) {
  FlowEntry entry;
  entry.match = match;
  entry.action = FlowAction::forward(next);
  entry.priority = priority::kHigh;
  entry.installed_at = now;
  entry.last_used = now;
  entry.idle_timeout_ms = params_.idle_timeout_ms;
  installed_[{node, match, entry.priority}] = entry;
  out.mods.push_back({node, FlowModCommand::kAdd, entry});
  ++flow_mods_;
}

void Controller::add_drop(NodeId node, const FlowMatch& match, int prio, SimTime hard_timeout,
                          SimTime now, ControllerDecision& out) {
  FlowEntry entry;
  entry.match = match;
  entry.action = FlowAction::drop();
  entry.priority = prio;
  entry.installed_at = now;
  entry.last_used = now;
  entry.hard_timeout_ms = hard_timeout;
  installed_[{node, match, prio}] = entry;
  out.mods.push_back({node, FlowModCommand::kAdd, entry});
  ++flow_mods_;
}

void Controller::remove(NodeId node, const FlowMatch& match, int prio, SimTime now,
                        ControllerDecision& out) {
  FlowEntry entry;
  entry.match = match;
  entry.priority = prio;
  entry.installed_at = now;
  installed_.erase({node, match, prio});
  out.mods.push_back({node, FlowModCommand::kDelete, entry});
  ++flow_mods_;
}

void Controller::purge_entries(
    const std::function<bool(const EntryKey&, const FlowEntry&)>& pred, SimTime now,
    ControllerDecision& out) {
  std::vector<EntryKey> doomed;
  for (const auto& [key, entry] : installed_) {
    if (pred(key, entry)) doomed.push_back(key);
  }
  for (const auto& [node, match, prio] : doomed) remove(node, match, prio, now, out);
}

void Controller::reroute(FlowRecord& record, SimTime now, ControllerDecision& out,
                         std::optional<std::optional<Path>> precomputed) {
  std::optional<Path> fresh;
  if (precomputed) {
    fresh = std::move(*precomputed);
  } else {
    ++out.computations;
    fresh = compute(record.head, record.match.dst);
  }
  const std::optional<Path> old = std::move(record.path);

  auto old_next = [&](NodeId node) -> std::optional<NodeId> {
    if (!old) return std::nullopt;
    for (std::size_t i = 0; i + 1 < old->hops.size(); ++i) {
      if (old->hops[i] == node) return old->hops[i + 1];
    }
    return std::nullopt;
  };

  if (fresh) {
    for (std::size_t i = 0; i + 1 < fresh->hops.size(); ++i) {
      const NodeId node = fresh->hops[i];
      const NodeId next = fresh->hops[i + 1];
      auto it = installed_.find({node, record.match, priority::kHigh});
      const bool current = old_next(node) == next && it != installed_.end() &&
                           it->second.action == FlowAction::forward(next);
      if (!current) add_forward(node, record.match, next, now, out);
    }
    if (old) {
      for (std::size_t i = 0; i + 1 < old->hops.size(); ++i) {
        const NodeId node = old->hops[i];
        if (!fresh->visits(node)) {
          remove(node, record.match, priority::kHigh, now, out);
        }
      }
    }
  } else {
    if (old) {
      for (std::size_t i = 0; i + 1 < old->hops.size(); ++i) {
        if (old->hops[i] != record.head) remove(old->hops[i], record.match, priority::kHigh, now, out);
      }
    }
    if (!quarantined_.contains(record.head)) {
      add_drop(record.head, record.match, priority::kHigh, params_.drop_timeout_ms, now, out);
    } else if (old) {
      remove(record.head, record.match, priority::kHigh, now, out);
    }
  }
  record.path = std::move(fresh);
}

ControllerDecision Controller::packet_in(NodeId src, NodeId dst, NodeId at_node, SimTime now) {
  ++packet_ins_;
  ControllerDecision out;
  const FlowMatch match{src, dst};
  auto it = flows_.find(match);
  if (it == flows_.end()) {
    FlowRecord record{match, at_node, std::nullopt};
    reroute(record, now, out);
    flows_.emplace(match, std::move(record));
    return out;
  }
  FlowRecord& record = it->second;
  if (record.path && record.path->visits(at_node)) {
    // The entry expired or was removed under an in-flight packet: restore
    // the remainder of the path from at_node.
    ++out.computations;
    const auto& hops = record.path->hops;
    auto pos = std::find(hops.begin(), hops.end(), at_node);
    for (; pos + 1 < hops.end(); ++pos) add_forward(*pos, match, *(pos + 1), now, out);
    return out;
  }
  if (at_node == record.head) {
    reroute(record, now, out);
    return out;
  }
  // Off-path miss: steer this node onto the flow's path without moving it.
  ++out.computations;
  const std::optional<Path> branch = compute(at_node, dst);
  if (!branch) {
    add_drop(at_node, match, priority::kHigh, params_.drop_timeout_ms, now, out);
    return out;
  }
  for (std::size_t i = 0; i + 1 < branch->hops.size(); ++i) {
    const NodeId node = branch->hops[i];
    if (i > 0 && record.path && record.path->visits(node)) break;
    add_forward(node, match, branch->hops[i + 1], now, out);
  }
  return out;
}

std::pair<ControllerDecision, ReconfigRecord> Controller::handle_link_failure(NodeId a, NodeId b,
                                                                              SimTime failed_at,
                                                                              SimTime now) {
  if (in_view(a, b)) {
    reported_[index_of(a)].erase(b);
    reported_[index_of(b)].erase(a);
    rebuild_view();
  }
  ControllerDecision out;
  int affected = 0;
  int unreachable = 0;
  for (auto& [match, record] : flows_) {
    if (!record.path || !record.path->uses_link(a, b)) continue;
    ++affected;
    reroute(record, now, out);
    if (!record.path) ++unreachable;
  }
  // Entries outside tracked paths that still point across the dead link.
  purge_entries(
      [&](const EntryKey& key, const FlowEntry& e) {
        const NodeId node = std::get<0>(key);
        return e.action.is_forward() && ((node == a && e.action.next_hop == b) ||
                                         (node == b && e.action.next_hop == a));
      },
      now, out);

  out.computations = std::max(out.computations, 1);
  ReconfigRecord record = make_reconfig_record(
      now - failed_at, params_.compute_ms * out.computations,
      out.mods.empty() ? 0.0 : params_.control_delay_ms);
  record.flows_affected = affected;
  record.flows_unreachable = unreachable;
  return {std::move(out), record};
}

ControllerDecision Controller::handle_link_up(SimTime now) {
  ControllerDecision out;
  for (auto& [match, record] : flows_) {
    if (!record.path) {
      if (quarantined_.contains(record.head)) continue;
      ++out.computations;
      std::optional<Path> fresh = compute(record.head, match.dst);
      if (fresh) reroute(record, now, out, std::move(fresh));
      continue;
    }
    if (!params_.reoptimize) continue;
    ++out.computations;
    std::optional<Path> fresh = compute(record.head, match.dst);
    if (fresh && objective_cost(*fresh) < objective_cost(*record.path) - 1e-9) {
      reroute(record, now, out, std::move(fresh));
    }
  }
  return out;
}

ControllerDecision Controller::quarantine_node(NodeId bad_node, SimTime now) {
  if (!view_.contains(bad_node)) throw std::out_of_range("quarantine_node: unknown node");
  ControllerDecision out;
  quarantined_.insert(bad_node);
  for (auto& [match, record] : flows_) {
    const bool touches = record.head == bad_node || match.dst == bad_node ||
                         (record.path && record.path->visits(bad_node));
    if (touches) reroute(record, now, out);
  }
  purge_entries(
      [&](const EntryKey& key, const FlowEntry& e) {
        return std::get<2>(key) != priority::kQuarantine &&
               (std::get<0>(key) == bad_node ||
                (e.action.is_forward() && e.action.next_hop == bad_node));
      },
      now, out);
  for (NodeId neighbor : view_.neighbors(bad_node)) {
    for (std::size_t d = 0; d < view_.node_count(); ++d) {
      if (node_id(d) == bad_node) continue;
      add_drop(neighbor, {bad_node, node_id(d)}, priority::kQuarantine, kNever, now, out);
    }
  }
  return out;
}

}  // namespace sdnmanet
