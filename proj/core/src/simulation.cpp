#include "sdnmanet/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace sdnmanet {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kMobilityTick: return "mobility_tick";
    case EventKind::kLinkScript: return "link_script";
    case EventKind::kTrafficStart: return "traffic_start";
    case EventKind::kPacketSend: return "packet_send";
    case EventKind::kTxComplete: return "tx_complete";
    case EventKind::kPacketArrive: return "packet_arrive";
    case EventKind::kHelloTick: return "hello_tick";
    case EventKind::kRouteLoss: return "route_loss";
    case EventKind::kDiscoveryComplete: return "discovery_complete";
    case EventKind::kDiscoveryTimeout: return "discovery_timeout";
    case EventKind::kStatusTick: return "status_tick";
    case EventKind::kReportArrive: return "report_arrive";
    case EventKind::kPacketInArrive: return "packet_in_arrive";
    case EventKind::kFlowModArrive: return "flow_mod_arrive";
    case EventKind::kQuarantine: return "quarantine";
  }
  return "?";
}

const char* to_string(DropCause cause) {
  switch (cause) {
    case DropCause::kDeadLink: return "dead_link";
    case DropCause::kQueueOverflow: return "queue_overflow";
    case DropCause::kTtlExpired: return "ttl_expired";
    case DropCause::kNoRoute: return "no_route";
    case DropCause::kBufferOverflow: return "buffer_overflow";
    case DropCause::kDropRule: return "drop_rule";
  }
  return "?";
}

namespace {

std::pair<NodeId, NodeId> canonical(NodeId x, NodeId y) { return std::minmax(x, y); }

// Shortest round-trip decimal form; locale-independent.
std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string idx(NodeId id) { return std::to_string(index_of(id)); }

SimTime tx_time_ms(int size_bytes, double capacity_bps) {
  return static_cast<double>(size_bytes) * 8.0 / capacity_bps * 1000.0;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& config, Mode mode, std::ostream* event_log)
    : config_(config),
      mode_(mode),
      log_(event_log),
      mobility_rng_(config.seed, "mobility"),
      traffic_rng_(config.seed, "traffic"),
      hello_rng_(config.seed, "hello") {
  if (auto errors = validate_config(config_); !errors.empty()) throw ConfigError(std::move(errors));
  config_.mode = mode;
  mobility_ = {config_.mobility_enabled, config_.area_width_m,  config_.area_height_m,
               config_.speed_min_mps,    config_.speed_max_mps, config_.pause_ms};
  link_model_ = {config_.weight_rule, config_.link_capacity_bps};

  const auto n = static_cast<std::size_t>(config_.node_count);
  buffered_.assign(n, 0);
  build_initial_topology();

  const bool moving = config_.mobility_enabled &&
                      !(config_.topology && config_.topology->links);
  if (moving) schedule(config_.mobility_tick_ms, EventKind::kMobilityTick);
  for (std::size_t i = 0; i < config_.link_events.size(); ++i) {
    schedule(config_.link_events[i].time_ms, EventKind::kLinkScript, i);
  }

  if (mode_ == Mode::kManet) {
    aodv_ = std::make_unique<AodvNetwork>(n, manet_params(config_));
    heard_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (NodeId y : topo_.neighbors(node_id(x))) heard_[x][y] = 0.0;
    }
    for (std::size_t x = 0; x < n; ++x) {
      schedule(hello_rng_.uniform(0.0, config_.manet.hello_interval_ms), EventKind::kHelloTick, x);
    }
  } else {
    std::vector<NodeState> nodes = topo_.nodes();
    controller_ = std::make_unique<Controller>(TopologySnapshot(0.0, std::move(nodes), {}),
                                               sdn_params(config_));
    tables_.reserve(n);
    for (std::size_t x = 0; x < n; ++x) tables_.emplace_back(node_id(x));
    last_reported_.resize(n);
    schedule(0.0, EventKind::kStatusTick);
  }
  for (std::size_t q = 0; q < config_.quarantine_events.size(); ++q) {
    schedule(config_.quarantine_events[q].time_ms, EventKind::kQuarantine,
             index_of(config_.quarantine_events[q].node));
  }
  build_traffic();
}

Simulation::~Simulation() = default;

void Simulation::build_initial_topology() {
  const auto n = static_cast<std::size_t>(config_.node_count);
  std::vector<NodeState> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeState& s = nodes[i];
    s.id = node_id(i);
    s.radio_range_m = config_.radio_range_m;
    if (config_.topology) {
      s.position = config_.topology->nodes[i].position;
      s.node_weight = config_.topology->nodes[i].node_weight;
    } else {
      s.position = {mobility_rng_.uniform(0.0, config_.area_width_m),
                    mobility_rng_.uniform(0.0, config_.area_height_m)};
    }
    s.waypoint = s.position;  // first mobility step picks a destination
  }
  std::vector<Link> links;
  if (config_.topology && config_.topology->links) {
    for (const StaticLink& l : *config_.topology->links) {
      Link link;
      link.a = std::min(l.a, l.b);
      link.b = std::max(l.a, l.b);
      link.weight = l.weight;
      link.capacity_bps = l.capacity_bps.value_or(config_.link_capacity_bps);
      links.push_back(link);
    }
  } else {
    links = build_links(nodes, link_model_);
  }
  topo_ = TopologySnapshot(0.0, std::move(nodes), std::move(links));
}

void Simulation::build_traffic() {
  const SimTime duration = config_.duration_ms;
  for (TrafficFlow f : config_.flows) {
    if (f.end_ms == 0.0) f.end_ms = duration;
    flows_.push_back(f);
  }
  const RandomTraffic& rt = config_.random_traffic;
  const auto n = static_cast<std::uint64_t>(config_.node_count);
  for (int k = 0; k < rt.count; ++k) {
    TrafficFlow f;
    const std::uint64_t src = traffic_rng_.below(n);
    std::uint64_t dst = traffic_rng_.below(n - 1);
    if (dst >= src) ++dst;
    f.src = node_id(src);
    f.dst = node_id(dst);
    f.rate_pps = rt.rate_pps;
    f.packet_size_bytes = rt.packet_size_bytes;
    f.start_ms = traffic_rng_.uniform(rt.start_min_ms, rt.start_max_ms);
    f.end_ms = duration;
    flows_.push_back(f);
  }
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    schedule(flows_[i].start_ms, EventKind::kTrafficStart, i);
  }
}

void Simulation::schedule(SimTime t, EventKind kind, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  if (t > config_.duration_ms) return;
  queue_.push({t, next_seq_++, kind, a, b, c});
}

void Simulation::run_until(SimTime t) {
  const SimTime limit = std::min(t, config_.duration_ms);
  while (!queue_.empty() && queue_.top().time <= limit) {
    const Event e = queue_.top();
    queue_.pop();
    now_ = e.time;
    dispatch(e);
  }
  now_ = std::max(now_, limit);
}

void Simulation::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::kMobilityTick: on_mobility_tick(); break;
    case EventKind::kLinkScript: on_link_script(e.a); break;
    case EventKind::kTrafficStart:
      if (log_) *log_ << R"({"t":)" << num(now_) << R"(,"ev":"traffic_start","flow":)" << e.a << "}\n";
      on_packet_send(e.a);
      break;
    case EventKind::kPacketSend: on_packet_send(e.a); break;
    case EventKind::kTxComplete: on_tx_complete(e.a, node_id(e.b), node_id(e.c)); break;
    case EventKind::kPacketArrive: on_arrive(e.a, node_id(e.b)); break;
    case EventKind::kHelloTick: on_hello(node_id(e.a)); break;
    case EventKind::kRouteLoss: on_route_loss(e.a); break;
    case EventKind::kDiscoveryComplete: on_discovery_complete(node_id(e.a), node_id(e.b)); break;
    case EventKind::kDiscoveryTimeout: on_discovery_timeout(node_id(e.a), node_id(e.b)); break;
    case EventKind::kStatusTick: on_status_tick(); break;
    case EventKind::kReportArrive: on_report_arrive(e.a); break;
    case EventKind::kPacketInArrive: on_packet_in(node_id(e.a), node_id(e.b), node_id(e.c)); break;
    case EventKind::kFlowModArrive: on_flow_mods(e.a); break;
    case EventKind::kQuarantine: on_quarantine(node_id(e.a)); break;
  }
}

// ---------------------------------------------------------------- topology

void Simulation::refresh_links(SimTime t) {
  // Caller has put the geometric (or static) link set into topo_; scripted
  // failures override it.
  for (const auto& [a, b] : forced_down_) topo_.set_link_up(a, b, false);
  topo_.set_time(t);
}

void Simulation::on_mobility_tick() {
  const TopologySnapshot before = topo_;
  topo_ = step_mobility(topo_, config_.mobility_tick_ms, mobility_, link_model_, mobility_rng_);
  refresh_links(now_);
  for (const Link& link : before.links()) {
    if (link.up && !topo_.has_live_link(link.a, link.b)) went_down_at_[{link.a, link.b}] = now_;
  }
  schedule(now_ + config_.mobility_tick_ms, EventKind::kMobilityTick);
}

void Simulation::on_link_script(std::size_t index) {
  const LinkEvent& ev = config_.link_events[index];
  const auto key = canonical(ev.a, ev.b);
  const bool was_live = topo_.has_live_link(ev.a, ev.b);
  if (ev.up) {
    forced_down_.erase(key);
    // Restore the link if geometry (or the static list) still provides it.
    topo_.set_link_up(ev.a, ev.b, true);
  } else {
    forced_down_.insert(key);
  }
  refresh_links(now_);
  if (was_live && !topo_.has_live_link(ev.a, ev.b)) went_down_at_[key] = now_;
  if (log_) {
    *log_ << R"({"t":)" << num(now_) << R"(,"ev":"link_)" << (ev.up ? "up" : "down") << R"(","a":)"
          << idx(ev.a) << R"(,"b":)" << idx(ev.b) << "}\n";
  }
}

// ---------------------------------------------------------------- data plane

void Simulation::on_packet_send(std::size_t flow) {
  const TrafficFlow& f = flows_[flow];
  if (now_ >= f.end_ms) return;
  const std::uint64_t id = packets_.size();
  Packet p;
  p.flow = flow;
  p.src = f.src;
  p.dst = f.dst;
  p.size_bytes = f.packet_size_bytes;
  p.created_at = now_;
  p.ttl = config_.ttl;
  packets_.push_back(p);
  ++sent_;
  last_generated_[{f.src, f.dst}] = now_;
  log_packet("send", id, f.src);

  // Generation instants are start + k / rate, computed without accumulation.
  const double period = 1000.0 / f.rate_pps;
  const auto k = static_cast<std::uint64_t>(std::llround((now_ - f.start_ms) / period)) + 1;
  const SimTime next = f.start_ms + static_cast<double>(k) * period;
  if (next < f.end_ms) schedule(next, EventKind::kPacketSend, flow);

  forward(id, f.src);
}

void Simulation::forward(std::uint64_t pkt, NodeId at) {
  if (mode_ == Mode::kManet) {
    forward_manet(pkt, at);
  } else {
    forward_sdn(pkt, at);
  }
}

void Simulation::transmit(std::uint64_t pkt, NodeId from, NodeId to) {
  Packet& p = packets_[pkt];
  const Link* link = topo_.find_link(from, to);
  if (link == nullptr || !link->up) {
    // The sender still believes in the neighbor and puts the frame on the air.
    data_bytes_ += p.size_bytes;
    drop(pkt, from, DropCause::kDeadLink);
    return;
  }
  LinkQueue& q = link_queues_[{from, to}];
  if (q.backlog >= config_.queue_limit) {
    drop(pkt, from, DropCause::kQueueOverflow);
    return;
  }
  const SimTime tx = tx_time_ms(p.size_bytes, link->capacity_bps);
  const SimTime start = std::max(now_, q.busy_until);
  q.busy_until = start + tx;
  ++q.backlog;
  data_bytes_ += p.size_bytes;
  p.floor_ms += tx;
  if (log_) {
    *log_ << R"({"t":)" << num(now_) << R"(,"ev":"tx","pkt":)" << pkt << R"(,"from":)" << idx(from)
          << R"(,"to":)" << idx(to) << R"(,"bytes":)" << p.size_bytes << R"(,"end":)"
          << num(q.busy_until) << "}\n";
  }
  schedule(q.busy_until, EventKind::kTxComplete, pkt, index_of(from), index_of(to));
}

void Simulation::on_tx_complete(std::uint64_t pkt, NodeId from, NodeId to) {
  --link_queues_[{from, to}].backlog;
  if (!topo_.has_live_link(from, to)) {
    drop(pkt, from, DropCause::kDeadLink);
    return;
  }
  schedule(now_ + config_.processing_ms, EventKind::kPacketArrive, pkt, index_of(to));
}

void Simulation::on_arrive(std::uint64_t pkt, NodeId at) {
  Packet& p = packets_[pkt];
  ++p.hops;
  if (at == p.dst) {
    deliver(pkt, at);
    return;
  }
  if (--p.ttl <= 0) {
    drop(pkt, at, DropCause::kTtlExpired);
    return;
  }
  forward(pkt, at);
}

void Simulation::deliver(std::uint64_t pkt, NodeId at) {
  Packet& p = packets_[pkt];
  p.state = PacketState::kDelivered;
  ++delivered_;
  const double latency = now_ - p.created_at;
  latencies_.push_back(latency);
  useful_bytes_ += p.size_bytes;
  if (log_) {
    *log_ << R"({"t":)" << num(now_) << R"(,"ev":"deliver","pkt":)" << pkt << R"(,"at":)" << idx(at)
          << R"(,"latency":)" << num(latency) << R"(,"floor":)" << num(p.floor_ms)
          << R"(,"hops":)" << p.hops << "}\n";
  }
}

void Simulation::drop(std::uint64_t pkt, NodeId at, DropCause cause) {
  packets_[pkt].state = PacketState::kDropped;
  ++dropped_;
  ++drops_by_cause_[to_string(cause)];
  log_packet("drop", pkt, at, to_string(cause));
}

// ---------------------------------------------------------------- reactive mode

bool Simulation::has_active_traffic(NodeId src, NodeId dst) const {
  if (const auto it = route_wait_.find({src, dst}); it != route_wait_.end() && !it->second.empty()) {
    return true;
  }
  const auto it = last_generated_.find({src, dst});
  return it != last_generated_.end() && now_ - it->second <= config_.manet.active_route_timeout_ms;
}

void Simulation::forward_manet(std::uint64_t pkt, NodeId at) {
  const Packet& p = packets_[pkt];
  if (const RouteEntry* route = aodv_->lookup(at, p.dst, now_)) {
    const NodeId next = route->next_hop;
    aodv_->refresh(at, p.dst, now_);
    if (at == p.src) {
      if (auto it = open_repairs_.find({p.src, p.dst});
          it != open_repairs_.end() && it->second.rrep_at) {
        RepairRecord r = it->second.record;
        r.t_reconfiguration = now_ - *it->second.rrep_at;
        repairs_.push_back(r);
        update_times_.push_back(routing_table_update_time(r));
        open_repairs_.erase(it);
      }
    }
    transmit(pkt, at, next);
    return;
  }
  if (at != p.src) {
    drop(pkt, at, DropCause::kNoRoute);
    return;
  }
  if (buffered_[index_of(at)] >= config_.manet.buffer_limit) {
    drop(pkt, at, DropCause::kBufferOverflow);
    return;
  }
  route_wait_[{p.src, p.dst}].push_back(pkt);
  ++buffered_[index_of(at)];
  if (!discovery_state_[{p.src, p.dst}].active) start_discovery(p.src, p.dst);
}

void Simulation::start_discovery(NodeId src, NodeId dst) {
  Discovery& d = discovery_state_[{src, dst}];
  d.active = true;
  DiscoveryResult result = aodv_->discover(src, dst, topo_, now_);
  const ManetMessageSizes& sizes = config_.message_sizes.manet;
  count_control("RREQ", result.record.rreq_transmissions,
                std::int64_t{result.record.rreq_transmissions} * sizes.rreq);
  count_control("RREP", result.record.rrep_transmissions,
                std::int64_t{result.record.rrep_transmissions} * sizes.rrep);
  discoveries_.push_back(result.record);
  if (log_) {
    *log_ << R"({"t":)" << num(now_) << R"(,"ev":"discovery","src":)" << idx(src) << R"(,"dst":)"
          << idx(dst) << R"(,"found":)" << (result.record.found ? "true" : "false") << R"(,"end":)"
          << num(result.record.t_end) << "}\n";
  }
  if (result.record.found) {
    const SimTime done = result.record.t_end;
    d.result = pending_results_.size();
    pending_results_.push_back(std::move(result));
    schedule(done, EventKind::kDiscoveryComplete, index_of(src), index_of(dst));
  } else {
    const SimTime wait = config_.manet.rreq_wait_ms * std::ldexp(1.0, d.attempt);
    schedule(now_ + wait, EventKind::kDiscoveryTimeout, index_of(src), index_of(dst));
  }
}

void Simulation::on_discovery_complete(NodeId src, NodeId dst) {
  Discovery& d = discovery_state_[{src, dst}];
  aodv_->install(pending_results_[d.result]);
  pending_results_[d.result] = {};
  d.active = false;
  d.attempt = 0;
  if (auto it = open_repairs_.find({src, dst}); it != open_repairs_.end() && !it->second.rrep_at) {
    it->second.record.t_discovery = now_ - it->second.noticed_at;
    it->second.rrep_at = now_;
  }
  auto waiting = route_wait_.find({src, dst});
  if (waiting == route_wait_.end()) return;
  std::deque<std::uint64_t> packets = std::move(waiting->second);
  route_wait_.erase(waiting);
  buffered_[index_of(src)] -= static_cast<int>(packets.size());
  for (std::uint64_t pkt : packets) forward_manet(pkt, src);
}

void Simulation::on_discovery_timeout(NodeId src, NodeId dst) {
  Discovery& d = discovery_state_[{src, dst}];
  if (++d.attempt <= config_.manet.rreq_retries) {
    start_discovery(src, dst);
    return;
  }
  d.active = false;
  d.attempt = 0;
  open_repairs_.erase({src, dst});
  auto waiting = route_wait_.find({src, dst});
  if (waiting == route_wait_.end()) return;
  std::deque<std::uint64_t> packets = std::move(waiting->second);
  route_wait_.erase(waiting);
  buffered_[index_of(src)] -= static_cast<int>(packets.size());
  for (std::uint64_t pkt : packets) drop(pkt, src, DropCause::kNoRoute);
}

void Simulation::on_hello(NodeId node) {
  const std::size_t x = index_of(node);
  aodv_->count_hello();
  count_control("HELLO", 1, config_.message_sizes.manet.hello);
  for (NodeId y : topo_.neighbors(node)) heard_[index_of(y)][node] = now_;

  const SimTime limit = config_.manet.allowed_hello_loss * config_.manet.hello_interval_ms;
  std::vector<NodeId> lost;
  for (const auto& [y, last] : heard_[x]) {
    if (now_ - last > limit) lost.push_back(y);
  }
  for (NodeId y : lost) {
    heard_[x].erase(y);
    const auto key = canonical(node, y);
    const auto down = went_down_at_.find(key);
    const SimTime failed_at = down != went_down_at_.end() ? down->second : now_;
    LinkBreakResult result = aodv_->handle_link_break(node, y, topo_, now_);
    count_control("RERR", static_cast<std::int64_t>(result.messages.size()),
                  static_cast<std::int64_t>(result.messages.size()) * config_.message_sizes.manet.rerr);
    if (log_) {
      *log_ << R"({"t":)" << num(now_) << R"(,"ev":"link_break","node":)" << idx(node)
            << R"(,"neighbor":)" << idx(y) << R"(,"failed_at":)" << num(failed_at) << "}\n";
    }
    for (RouteLossNotice& notice : result.notices) {
      const SimTime at = notice.at;
      notices_.emplace_back(std::move(notice), failed_at);
      schedule(at, EventKind::kRouteLoss, notices_.size() - 1);
    }
  }
  schedule(now_ + config_.manet.hello_interval_ms, EventKind::kHelloTick, x);
}

void Simulation::on_route_loss(std::size_t index) {
  const auto& [notice, failed_at] = notices_[index];
  const NodeId src = notice.node;
  for (NodeId dst : notice.destinations) {
    if (!has_active_traffic(src, dst) || open_repairs_.contains({src, dst})) continue;
    Repair repair;
    repair.record.source = src;
    repair.record.destination = dst;
    repair.record.failed_at = failed_at;
    repair.record.t_propagation = now_ - failed_at;
    repair.noticed_at = now_;
    open_repairs_.emplace(std::make_pair(src, dst), repair);
    if (!discovery_state_[{src, dst}].active) start_discovery(src, dst);
  }
}

// ---------------------------------------------------------------- SDN mode

std::vector<NeighborReport> Simulation::neighbor_report(NodeId node) const {
  std::vector<NeighborReport> out;
  for (NodeId y : topo_.neighbors(node)) {
    const Link* link = topo_.find_link(node, y);
    out.push_back({y, link->weight, link->capacity_bps});
  }
  return out;
}

void Simulation::on_status_tick() {
  const SimTime delay = config_.sdn.control_delay_ms;
  for (std::size_t x = 0; x < last_reported_.size(); ++x) {
    std::vector<NeighborReport> current = neighbor_report(node_id(x));
    if (current == last_reported_[x] && now_ > 0.0) continue;
    last_reported_[x] = current;
    reports_.emplace_back(node_id(x), std::move(current));
    schedule(now_ + delay, EventKind::kReportArrive, reports_.size() - 1);
  }
  const SimTime interval = config_.sdn.status_interval_ms;
  // Offset from the mobility ticks so a report never races a topology change.
  schedule(now_ == 0.0 ? interval / 2.0 : now_ + interval, EventKind::kStatusTick);
}

void Simulation::on_report_arrive(std::size_t index) {
  const auto& [node, neighbors] = reports_[index];
  count_control("STATUS_REPORT", 1, config_.message_sizes.sdn.status_report);
  const ViewChange change = controller_->apply_status_report(node, neighbors, now_);
  const SimTime compute = config_.sdn.controller_compute_ms;
  for (const Link& link : change.went_down) {
    const auto down = went_down_at_.find({link.a, link.b});
    const SimTime failed_at = down != went_down_at_.end() ? down->second : now_;
    const SimTime start = std::max(now_, controller_busy_until_);
    auto [decision, record] = controller_->handle_link_failure(link.a, link.b, failed_at, start);
    controller_busy_until_ = start + record.t_computation;
    reconfigs_.push_back(record);
    if (record.flows_affected > 0) update_times_.push_back(record.total);
    if (log_) {
      *log_ << R"({"t":)" << num(now_) << R"(,"ev":"reconfig","a":)" << idx(link.a) << R"(,"b":)"
            << idx(link.b) << R"(,"detection":)" << num(record.t_detection) << R"(,"computation":)"
            << num(record.t_computation) << R"(,"update":)" << num(record.t_update)
            << R"(,"total":)" << num(record.total) << R"(,"flows":)" << record.flows_affected
            << "}\n";
    }
    send_mods(std::move(decision), controller_busy_until_);
  }
  if (!change.came_up.empty()) {
    const SimTime start = std::max(now_, controller_busy_until_);
    ControllerDecision decision = controller_->handle_link_up(start);
    controller_busy_until_ = start + compute * decision.computations;
    send_mods(std::move(decision), controller_busy_until_);
  }
}

void Simulation::on_packet_in(NodeId node, NodeId src, NodeId dst) {
  count_control("PACKET_IN", 1, config_.message_sizes.sdn.packet_in);
  const SimTime start = std::max(now_, controller_busy_until_);
  ControllerDecision decision = controller_->packet_in(src, dst, node, start);
  controller_busy_until_ = start + config_.sdn.controller_compute_ms * decision.computations;
  send_mods(std::move(decision), controller_busy_until_, std::make_pair(node, FlowMatch{src, dst}));
}

void Simulation::on_quarantine(NodeId node) {
  if (log_) *log_ << R"({"t":)" << num(now_) << R"(,"ev":"quarantine","node":)" << idx(node) << "}\n";
  // Reactive mode has no central authority to act on the verdict.
  if (mode_ != Mode::kSdn) return;
  const SimTime start = std::max(now_, controller_busy_until_);
  ControllerDecision decision = controller_->quarantine_node(node, start);
  controller_busy_until_ = start + config_.sdn.controller_compute_ms * decision.computations;
  send_mods(std::move(decision), controller_busy_until_);
}

void Simulation::send_mods(ControllerDecision decision, SimTime start,
                           std::optional<std::pair<NodeId, FlowMatch>> origin) {
  if (decision.mods.empty() && !origin) return;
  const auto n = static_cast<std::int64_t>(decision.mods.size());
  count_control("FLOW_MOD", n, n * config_.message_sizes.sdn.flow_mod);
  batches_.push_back({std::move(decision.mods), origin});
  schedule(start + config_.sdn.control_delay_ms, EventKind::kFlowModArrive, batches_.size() - 1);
}

void Simulation::on_flow_mods(std::size_t index) {
  ModBatch batch = std::move(batches_[index]);
  std::set<std::pair<NodeId, FlowMatch>> touched;
  for (FlowMod& mod : batch.mods) {
    mod.entry.installed_at = now_;
    mod.entry.last_used = now_;
    apply_flow_mod(tables_[index_of(mod.node)], mod);
    touched.insert({mod.node, mod.entry.match});
  }
  if (batch.origin) touched.insert(*batch.origin);
  for (const auto& key : touched) {
    pending_packet_in_.erase(key);
    retry_buffer(key.first, key.second);
  }
}

void Simulation::retry_buffer(NodeId node, const FlowMatch& match) {
  auto it = miss_wait_.find({node, match});
  if (it == miss_wait_.end()) return;
  std::deque<std::uint64_t> packets = std::move(it->second);
  miss_wait_.erase(it);
  buffered_[index_of(node)] -= static_cast<int>(packets.size());
  for (std::uint64_t pkt : packets) forward_sdn(pkt, node);
}

void Simulation::forward_sdn(std::uint64_t pkt, NodeId at) {
  const Packet& p = packets_[pkt];
  FlowTable& table = tables_[index_of(at)];
  table.expire(now_);
  const std::optional<FlowEntry> hit = match_flow(table, p.src, p.dst);
  if (hit) {
    if (!hit->action.is_forward()) {
      drop(pkt, at, DropCause::kDropRule);
      return;
    }
    table.touch(p.src, p.dst, now_);
    transmit(pkt, at, hit->action.next_hop);
    return;
  }
  if (buffered_[index_of(at)] >= config_.sdn.buffer_limit) {
    drop(pkt, at, DropCause::kBufferOverflow);
    return;
  }
  const auto key = std::make_pair(at, FlowMatch{p.src, p.dst});
  miss_wait_[key].push_back(pkt);
  ++buffered_[index_of(at)];
  if (pending_packet_in_.insert(key).second) {
    schedule(now_ + config_.sdn.control_delay_ms, EventKind::kPacketInArrive, index_of(at),
             index_of(p.src), index_of(p.dst));
  }
}

// ---------------------------------------------------------------- accounting

void Simulation::count_control(const std::string& kind, std::int64_t messages, std::int64_t bytes) {
  if (messages == 0) return;
  control_messages_[kind] += messages;
  control_bytes_by_kind_[kind] += bytes;
  control_bytes_ += bytes;
  log_control(kind, messages, bytes);
}

std::int64_t Simulation::module_control_bytes() const {
  if (aodv_) return aodv_->control_bytes();
  return controller_ ? controller_->control_bytes() : 0;
}

void Simulation::log_packet(const char* ev, std::uint64_t pkt, NodeId at, const char* extra) {
  if (!log_) return;
  *log_ << R"({"t":)" << num(now_) << R"(,"ev":")" << ev << R"(","pkt":)" << pkt << R"(,"at":)"
        << idx(at);
  if (extra) *log_ << R"(,"cause":")" << extra << '"';
  *log_ << "}\n";
}

void Simulation::log_control(const std::string& kind, std::int64_t messages, std::int64_t bytes) {
  if (!log_) return;
  *log_ << R"({"t":)" << num(now_) << R"(,"ev":"control","kind":")" << kind << R"(","messages":)"
        << messages << R"(,"bytes":)" << bytes << "}\n";
}

MetricsReport Simulation::report() const {
  MetricsReport r;
  r.mode = mode_;
  r.seed = config_.seed;
  r.duration_ms = config_.duration_ms;
  r.packets_sent = sent_;
  r.packets_delivered = delivered_;
  r.packets_dropped = dropped_;
  r.in_flight_at_end = std::count_if(packets_.begin(), packets_.end(), [](const Packet& p) {
    return p.state == PacketState::kInFlight;
  });
  r.drops_by_cause = drops_by_cause_;

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  r.latency_samples = static_cast<std::int64_t>(latencies_.size());
  if (latencies_.empty()) {
    r.latency_mean_ms = r.latency_p50_ms = r.latency_p95_ms = kNaN;
  } else {
    double sum = 0.0;
    for (double l : latencies_) sum += l;
    r.latency_mean_ms = sum / static_cast<double>(latencies_.size());
    r.latency_p50_ms = percentile(latencies_, 0.5);
    r.latency_p95_ms = percentile(latencies_, 0.95);
  }
  const double seconds = config_.duration_ms / 1000.0;
  r.useful_bytes = useful_bytes_;
  r.throughput_bps = static_cast<double>(useful_bytes_) * 8.0 / seconds;
  r.pdr = sent_ > 0 ? static_cast<double>(delivered_) / static_cast<double>(sent_) : 0.0;

  r.control_bytes = control_bytes_;
  r.data_bytes = data_bytes_;
  const auto on_air = static_cast<double>(control_bytes_ + data_bytes_);
  r.overhead = on_air > 0.0 ? static_cast<double>(control_bytes_) / on_air : 0.0;
  r.efficiency = on_air > 0.0 ? static_cast<double>(useful_bytes_) / on_air : 0.0;
  r.control_messages_by_kind = control_messages_;
  r.control_bytes_by_kind = control_bytes_by_kind_;

  r.update_times_ms = update_times_;
  if (update_times_.empty()) {
    r.update_time_mean_ms = kNaN;
  } else {
    double sum = 0.0;
    for (double u : update_times_) sum += u;
    r.update_time_mean_ms = sum / static_cast<double>(update_times_.size());
  }
  return r;
}

MetricsReport run_scenario(const ScenarioConfig& config) {
  return run_scenario(config, config.mode);
}

MetricsReport run_scenario(const ScenarioConfig& config, Mode mode, std::ostream* event_log) {
  Simulation sim(config, mode, event_log);
  sim.run();
  return sim.report();
}

}  // namespace sdnmanet
