#include "sdnmanet/manet_routing.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace sdnmanet {

const char* to_string(ControlKind kind) {
  switch (kind) {
    case ControlKind::kRreq: return "RREQ";
    case ControlKind::kRrep: return "RREP";
    case ControlKind::kRerr: return "RERR";
    case ControlKind::kHello: return "HELLO";
  }
  return "?";
}

int ManetMessageSizes::of(ControlKind kind) const noexcept {
  switch (kind) {
    case ControlKind::kRreq: return rreq;
    case ControlKind::kRrep: return rrep;
    case ControlKind::kRerr: return rerr;
    case ControlKind::kHello: return hello;
  }
  return 0;
}

SimTime control_hop_delay(const Link& link, int size_bytes, SimTime processing_ms) {
  return size_bytes * 8.0 / link.capacity_bps * 1000.0 + processing_ms;
}

namespace {

// (time, sequence) ordered pending receptions inside one flood.
struct Reception {
  SimTime time;
  std::uint64_t seq;
  NodeId at;
  NodeId from;
  int hops;

  bool operator>(const Reception& o) const {
    return std::tie(time, seq) > std::tie(o.time, o.seq);
  }
};

}  // namespace

DiscoveryResult discover_route(NodeId src, NodeId dst, const TopologySnapshot& snapshot,
                               const ManetParams& params, SimTime now, std::uint32_t rreq_id,
                               std::uint32_t dest_sequence) {
  if (src == dst) throw std::invalid_argument("discover_route: src == dst");
  if (!snapshot.contains(src) || !snapshot.contains(dst)) {
    throw std::out_of_range("discover_route: unknown endpoint");
  }
  const auto& sizes = params.sizes;
  DiscoveryResult result;
  DiscoveryRecord& rec = result.record;
  rec.src = src;
  rec.dst = dst;
  rec.t_start = now;
  rec.t_end = now;

  const std::size_t n = snapshot.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeId> parent(n, src);
  seen[index_of(src)] = true;

  std::priority_queue<Reception, std::vector<Reception>, std::greater<>> pending;
  std::uint64_t seq = 0;

  auto broadcast = [&](NodeId from, SimTime t, int hops) {
    ControlMessage msg;
    msg.kind = ControlKind::kRreq;
    msg.origin = src;
    msg.target = dst;
    msg.rreq_id = rreq_id;
    msg.hop_count = hops;
    msg.size_bytes = sizes.rreq;
    msg.sender = from;
    msg.sent_at = t;
    result.messages.push_back(std::move(msg));
    ++rec.rreq_transmissions;
    rec.t_end = std::max(rec.t_end, t);
    for (NodeId v : snapshot.neighbors(from)) {
      const SimTime delay = control_hop_delay(*snapshot.find_link(from, v), sizes.rreq,
                                              params.processing_ms);
      pending.push({t + delay, seq++, v, from, hops + 1});
    }
  };

  broadcast(src, now, 0);
  std::optional<SimTime> reached_at;
  while (!pending.empty()) {
    const Reception r = pending.top();
    pending.pop();
    const std::size_t at = index_of(r.at);
    if (seen[at]) continue;  // duplicate (origin, rreq_id): dropped
    seen[at] = true;
    parent[at] = r.from;
    if (r.at == dst) {
      reached_at = r.time;  // destination answers and does not rebroadcast
      continue;
    }
    broadcast(r.at, r.time, r.hops);
  }

  if (!reached_at) {
    rec.found = false;
    rec.control_messages = rec.rreq_transmissions;
    rec.control_bytes = static_cast<std::int64_t>(rec.rreq_transmissions) * sizes.rreq;
    return result;
  }

  std::vector<NodeId> hops{dst};
  for (NodeId v = dst; v != src;) {
    v = parent[index_of(v)];
    hops.push_back(v);
  }
  std::reverse(hops.begin(), hops.end());
  const int hop_total = static_cast<int>(hops.size()) - 1;

  // RREP walks the reverse path; each upstream node installs its forward
  // route as the reply passes through.
  SimTime t = *reached_at;
  std::vector<RouteInstall> installs;
  for (int i = hop_total; i >= 1; --i) {
    const NodeId from = hops[i];
    const NodeId to = hops[i - 1];
    ControlMessage msg;
    msg.kind = ControlKind::kRrep;
    msg.origin = src;
    msg.target = dst;
    msg.rreq_id = rreq_id;
    msg.hop_count = hop_total - i;
    msg.size_bytes = sizes.rrep;
    msg.sender = from;
    msg.receiver = to;
    msg.sent_at = t;
    result.messages.push_back(std::move(msg));
    ++rec.rrep_transmissions;
    t += control_hop_delay(*snapshot.find_link(from, to), sizes.rrep, params.processing_ms);

    RouteEntry entry;
    entry.destination = dst;
    entry.next_hop = from;
    entry.hop_count = hop_total - (i - 1);
    entry.dest_sequence = dest_sequence;
    entry.installed_at = t;
    entry.expiry = t + params.active_route_timeout_ms;
    if (i - 1 > 0) entry.precursors.push_back(hops[i - 2]);
    installs.push_back({to, std::move(entry)});
  }
  std::reverse(installs.begin(), installs.end());

  rec.found = true;
  rec.t_end = t;
  rec.control_messages = rec.rreq_transmissions + rec.rrep_transmissions;
  rec.control_bytes = static_cast<std::int64_t>(rec.rreq_transmissions) * sizes.rreq +
                      static_cast<std::int64_t>(rec.rrep_transmissions) * sizes.rrep;
  result.installs = std::move(installs);
  result.path = make_path(snapshot, std::move(hops));
  return result;
}

AodvNetwork::AodvNetwork(std::size_t node_count, ManetParams params)
    : params_(params),
      tables_(node_count),
      next_rreq_id_(node_count, 0),
      sequence_(node_count, 0) {}

void AodvNetwork::count(ControlKind kind, int n) {
  messages_[static_cast<int>(kind)] += n;
  control_bytes_ += static_cast<std::int64_t>(n) * params_.sizes.of(kind);
}

DiscoveryResult AodvNetwork::discover(NodeId src, NodeId dst, const TopologySnapshot& snapshot,
                                      SimTime now) {
  const std::uint32_t rreq_id = ++next_rreq_id_.at(index_of(src));
  const std::uint32_t dest_seq = sequence_.at(index_of(dst)) + 1;
  DiscoveryResult result = discover_route(src, dst, snapshot, params_, now, rreq_id, dest_seq);
  if (result.record.found) sequence_[index_of(dst)] = dest_seq;
  count(ControlKind::kRreq, result.record.rreq_transmissions);
  count(ControlKind::kRrep, result.record.rrep_transmissions);
  return result;
}

bool AodvNetwork::offer(NodeId node, const RouteEntry& entry) {
  auto& table = tables_.at(index_of(node));
  auto it = table.find(entry.destination);
  if (it == table.end()) {
    table.emplace(entry.destination, entry);
    return true;
  }
  RouteEntry& old = it->second;
  const bool fresher = entry.dest_sequence > old.dest_sequence ||
                       (entry.dest_sequence == old.dest_sequence &&
                        (!old.valid || entry.hop_count < old.hop_count));
  if (!fresher) return false;
  std::vector<NodeId> precursors = old.precursors;
  for (NodeId p : entry.precursors) {
    if (std::find(precursors.begin(), precursors.end(), p) == precursors.end()) {
      precursors.push_back(p);
    }
  }
  std::sort(precursors.begin(), precursors.end());
  old = entry;
  old.precursors = std::move(precursors);
  // The next hop is downstream, never a precursor.
  std::erase(old.precursors, old.next_hop);
  return true;
}

void AodvNetwork::install(const DiscoveryResult& result) {
  for (const RouteInstall& install : result.installs) offer(install.node, install.entry);
}

const RouteEntry* AodvNetwork::lookup(NodeId node, NodeId dst, SimTime now) const {
  const auto& table = tables_.at(index_of(node));
  auto it = table.find(dst);
  if (it == table.end() || !it->second.valid || it->second.expiry <= now) return nullptr;
  return &it->second;
}

void AodvNetwork::refresh(NodeId node, NodeId dst, SimTime now) {
  auto& table = tables_.at(index_of(node));
  auto it = table.find(dst);
  if (it != table.end() && it->second.valid) {
    it->second.expiry = std::max(it->second.expiry, now + params_.active_route_timeout_ms);
  }
}

LinkBreakResult AodvNetwork::handle_link_break(NodeId node, NodeId broken_neighbor,
                                               const TopologySnapshot& snapshot, SimTime now) {
  LinkBreakResult result;

  struct Pending {
    SimTime time;
    std::uint64_t seq;
    NodeId at;
    NodeId via;                         // routes whose next hop is `via` are affected
    std::optional<std::vector<NodeId>> only;  // RERR destination list
    bool operator>(const Pending& o) const { return std::tie(time, seq) > std::tie(o.time, o.seq); }
  };
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> work;
  std::uint64_t seq = 0;
  work.push({now, seq++, node, broken_neighbor, std::nullopt});

  while (!work.empty()) {
    Pending p = work.top();
    work.pop();
    auto& table = tables_.at(index_of(p.at));
    std::vector<NodeId> lost;      // every destination invalidated here
    std::vector<NodeId> relay;     // destinations to announce upstream
    std::vector<NodeId> upstream;  // union of their precursors
    for (auto& [dst, entry] : table) {
      if (!entry.valid || entry.next_hop != p.via) continue;
      if (p.only && std::find(p.only->begin(), p.only->end(), dst) == p.only->end()) continue;
      entry.valid = false;
      result.invalidated.emplace_back(p.at, dst);
      lost.push_back(dst);
      if (entry.precursors.empty()) continue;
      relay.push_back(dst);
      for (NodeId up : entry.precursors) {
        if (std::find(upstream.begin(), upstream.end(), up) == upstream.end()) {
          upstream.push_back(up);
        }
      }
    }
    if (!lost.empty()) result.notices.push_back({p.at, std::move(lost), p.time});
    if (relay.empty()) continue;

    std::sort(upstream.begin(), upstream.end());
    ControlMessage msg;
    msg.kind = ControlKind::kRerr;
    msg.origin = node;
    msg.target = upstream.front();
    msg.size_bytes = params_.sizes.rerr;
    msg.sender = p.at;
    if (upstream.size() == 1) msg.receiver = upstream.front();
    msg.sent_at = p.time;
    msg.unreachable = relay;
    result.messages.push_back(msg);
    count(ControlKind::kRerr, 1);

    for (NodeId up : upstream) {
      const Link* link = snapshot.find_link(p.at, up);
      if (link == nullptr || !link->up) continue;  // precursor out of range: RERR lost
      const SimTime arrive = p.time + control_hop_delay(*link, params_.sizes.rerr,
                                                        params_.processing_ms);
      work.push({arrive, seq++, up, p.at, relay});
    }
  }
  return result;
}

std::optional<double> avg_path_cost(std::span<const std::pair<NodeId, Path>> active_routes,
                                    const TopologySnapshot& snapshot) {
  if (active_routes.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& [node, path] : active_routes) total += path_cost(snapshot, path);
  return total / static_cast<double>(active_routes.size());
}

}  // namespace sdnmanet
