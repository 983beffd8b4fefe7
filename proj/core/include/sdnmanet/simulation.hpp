#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnmanet/flow_table.hpp"
#include "sdnmanet/manet_routing.hpp"
#include "sdnmanet/metrics.hpp"
#include "sdnmanet/rng.hpp"
#include "sdnmanet/scenario.hpp"
#include "sdnmanet/sdn_control.hpp"
#include "sdnmanet/topology.hpp"

namespace sdnmanet {

enum class EventKind {
  kMobilityTick,
  kLinkScript,
  kTrafficStart,
  kPacketSend,
  kTxComplete,
  kPacketArrive,
  kHelloTick,
  kRouteLoss,
  kDiscoveryComplete,
  kDiscoveryTimeout,
  kStatusTick,
  kReportArrive,
  kPacketInArrive,
  kFlowModArrive,
  kQuarantine,
};

const char* to_string(EventKind kind);

enum class DropCause { kDeadLink, kQueueOverflow, kTtlExpired, kNoRoute, kBufferOverflow, kDropRule };

const char* to_string(DropCause cause);

/// Discrete-event run of one scenario in one mode.
///
/// Time advances through a single queue ordered by (time, insertion order),
/// so a run is a pure function of (config, mode). An optional sink receives
/// one JSON object per line for every packet and control event.
class Simulation {
 public:
  Simulation(const ScenarioConfig& config, Mode mode, std::ostream* event_log = nullptr);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Processes every event with time <= t (capped at the configured duration).
  void run_until(SimTime t);
  void run() { run_until(config_.duration_ms); }

  /// Counters and statistics as of the current time.
  MetricsReport report() const;

  SimTime now() const noexcept { return now_; }
  Mode mode() const noexcept { return mode_; }
  const ScenarioConfig& config() const noexcept { return config_; }
  const TopologySnapshot& topology() const noexcept { return topo_; }
  const std::vector<TrafficFlow>& flows() const noexcept { return flows_; }

  /// Reactive-mode state; nullptr in SDN mode.
  const AodvNetwork* aodv() const noexcept { return aodv_.get(); }
  const std::vector<DiscoveryRecord>& discoveries() const noexcept { return discoveries_; }
  const std::vector<RepairRecord>& repairs() const noexcept { return repairs_; }

  /// SDN-mode state; nullptr / empty in reactive mode.
  const Controller* controller() const noexcept { return controller_.get(); }
  const FlowTable& flow_table(NodeId node) const { return tables_.at(index_of(node)); }
  const std::vector<ReconfigRecord>& reconfigurations() const noexcept { return reconfigs_; }

  /// Bytes the modules themselves account for: the route tables' counters
  /// in reactive mode, the controller's in SDN mode.
  std::int64_t module_control_bytes() const;

 private:
  struct Event {
    SimTime time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::kMobilityTick;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;

    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  enum class PacketState { kInFlight, kDelivered, kDropped };

  struct Packet {
    std::size_t flow = 0;
    NodeId src{};
    NodeId dst{};
    int size_bytes = 0;
    SimTime created_at = 0.0;
    int ttl = 0;
    int hops = 0;
    SimTime floor_ms = 0.0;  // sum of serialization delays so far
    PacketState state = PacketState::kInFlight;
  };

  struct LinkQueue {
    SimTime busy_until = 0.0;
    int backlog = 0;
  };

  struct Discovery {
    bool active = false;
    int attempt = 0;
    std::size_t result = 0;  // index into pending_results_
  };

  struct Repair {
    RepairRecord record;
    SimTime noticed_at = 0.0;
    std::optional<SimTime> rrep_at;
  };

  struct ModBatch {
    std::vector<FlowMod> mods;
    std::optional<std::pair<NodeId, FlowMatch>> origin;  // packet-in being answered
  };

  using NodePair = std::pair<NodeId, NodeId>;

  void schedule(SimTime t, EventKind kind, std::uint64_t a = 0, std::uint64_t b = 0,
                std::uint64_t c = 0);
  void dispatch(const Event& e);

  void build_initial_topology();
  void build_traffic();
  void refresh_links(SimTime t);
  void on_mobility_tick();
  void on_link_script(std::size_t index);

  void on_packet_send(std::size_t flow);
  void forward(std::uint64_t pkt, NodeId at);
  void transmit(std::uint64_t pkt, NodeId from, NodeId to);
  void on_tx_complete(std::uint64_t pkt, NodeId from, NodeId to);
  void on_arrive(std::uint64_t pkt, NodeId at);
  void deliver(std::uint64_t pkt, NodeId at);
  void drop(std::uint64_t pkt, NodeId at, DropCause cause);

  void forward_manet(std::uint64_t pkt, NodeId at);
  void on_hello(NodeId node);
  void on_route_loss(std::size_t notice);
  void start_discovery(NodeId src, NodeId dst);
  void on_discovery_complete(NodeId src, NodeId dst);
  void on_discovery_timeout(NodeId src, NodeId dst);
  bool has_active_traffic(NodeId src, NodeId dst) const;

  void forward_sdn(std::uint64_t pkt, NodeId at);
  void on_status_tick();
  void on_report_arrive(std::size_t report);
  void on_packet_in(NodeId node, NodeId src, NodeId dst);
  void on_flow_mods(std::size_t batch);
  void on_quarantine(NodeId node);
  void send_mods(ControllerDecision decision, SimTime start,
                 std::optional<std::pair<NodeId, FlowMatch>> origin = std::nullopt);
  void retry_buffer(NodeId node, const FlowMatch& match);

  void count_control(const std::string& kind, std::int64_t messages, std::int64_t bytes);
  std::vector<NeighborReport> neighbor_report(NodeId node) const;

  // Event log helpers; no-ops without a sink.
  void log_packet(const char* ev, std::uint64_t pkt, NodeId at, const char* extra = nullptr);
  void log_control(const std::string& kind, std::int64_t messages, std::int64_t bytes);

  ScenarioConfig config_;
  Mode mode_;
  std::ostream* log_;

  RngStream mobility_rng_;
  RngStream traffic_rng_;
  RngStream hello_rng_;

  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;

  TopologySnapshot topo_;
  MobilityParams mobility_;
  LinkModel link_model_;
  std::set<NodePair> forced_down_;
  std::map<NodePair, SimTime> went_down_at_;

  std::vector<TrafficFlow> flows_;
  std::vector<Packet> packets_;
  std::map<NodePair, LinkQueue> link_queues_;

  // Reactive mode.
  std::unique_ptr<AodvNetwork> aodv_;
  std::vector<std::map<NodeId, SimTime>> heard_;  // heard_[x][y]: last HELLO x got from y
  std::map<NodePair, std::deque<std::uint64_t>> route_wait_;  // (src, dst) -> buffered packets
  std::vector<int> buffered_;                                 // per node
  std::map<NodePair, Discovery> discovery_state_;
  std::vector<DiscoveryResult> pending_results_;
  std::vector<DiscoveryRecord> discoveries_;
  std::map<NodePair, Repair> open_repairs_;
  std::vector<RepairRecord> repairs_;
  std::vector<std::pair<RouteLossNotice, SimTime>> notices_;  // notice, failure time
  std::map<NodePair, SimTime> last_generated_;

  // SDN mode.
  std::unique_ptr<Controller> controller_;
  std::vector<FlowTable> tables_;
  std::vector<std::vector<NeighborReport>> last_reported_;
  std::vector<std::pair<NodeId, std::vector<NeighborReport>>> reports_;
  std::vector<ModBatch> batches_;
  std::map<std::pair<NodeId, FlowMatch>, std::deque<std::uint64_t>> miss_wait_;
  std::set<std::pair<NodeId, FlowMatch>> pending_packet_in_;
  SimTime controller_busy_until_ = 0.0;
  std::vector<ReconfigRecord> reconfigs_;

  // Counters.
  std::int64_t sent_ = 0;
  std::int64_t delivered_ = 0;
  std::int64_t dropped_ = 0;
  std::map<std::string, std::int64_t> drops_by_cause_;
  std::vector<double> latencies_;
  std::int64_t useful_bytes_ = 0;
  std::int64_t data_bytes_ = 0;
  std::int64_t control_bytes_ = 0;
  std::map<std::string, std::int64_t> control_messages_;
  std::map<std::string, std::int64_t> control_bytes_by_kind_;
  std::vector<double> update_times_;
};

/// Runs config.mode to completion.
MetricsReport run_scenario(const ScenarioConfig& config);
MetricsReport run_scenario(const ScenarioConfig& config, Mode mode,
                           std::ostream* event_log = nullptr);

}  // namespace sdnmanet
