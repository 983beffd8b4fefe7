#include "sdnmanet/scenario.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sdnmanet {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& errors) {
  std::ostringstream out;
  out << "invalid scenario config";
  for (const std::string& e : errors) out << "\n  " << e;
  return out.str();
}

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Collects diagnostics while reading a document; fields left unread keep the
// defaults already present in the target struct.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void fail(const std::string& path, const std::string& what) { errors_.push_back(path + ": " + what); }

  // Returns false (with a diagnostic) unless `j` is an object; also rejects
  // keys outside `allowed`.
  bool object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
      fail(path.empty() ? "<root>" : path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (std::string_view a : allowed) known = known || a == key;
      if (!known) fail(child(path, key), "unknown key");
    }
    return true;
  }

  void number(const json& obj, const std::string& path, const char* key, double& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) {
      fail(child(path, key), "expected a number");
      return;
    }
    out = it->get<double>();
    if (!std::isfinite(out)) fail(child(path, key), "must be finite");
  }

  void optional_number(const json& obj, const std::string& path, const char* key,
                       std::optional<double>& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    double v = 0.0;
    number(obj, path, key, v);
    out = v;
  }

  template <typename Int>
  void integer(const json& obj, const std::string& path, const char* key, Int& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (it->is_number_unsigned()) {
      const auto v = it->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
        fail(child(path, key), "out of range");
        return;
      }
      out = static_cast<Int>(v);
      return;
    }
    if (it->is_number_integer()) {
      const auto v = it->get<std::int64_t>();
      if constexpr (std::is_unsigned_v<Int>) {
        if (v < 0) {
          fail(child(path, key), "must be >= 0");
          return;
        }
      } else if (v < static_cast<std::int64_t>(std::numeric_limits<Int>::min()) ||
                 v > static_cast<std::int64_t>(std::numeric_limits<Int>::max())) {
        fail(child(path, key), "out of range");
        return;
      }
      out = static_cast<Int>(v);
      return;
    }
    fail(child(path, key), "expected an integer");
  }

  void node(const json& obj, const std::string& path, const char* key, NodeId& out) {
    std::uint32_t raw = index_of(out);
    integer(obj, path, key, raw);
    out = node_id(raw);
  }

  void boolean(const json& obj, const std::string& path, const char* key, bool& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_boolean()) {
      fail(child(path, key), "expected true or false");
      return;
    }
    out = it->get<bool>();
  }

  template <typename Enum>
  void choice(const json& obj, const std::string& path, const char* key, Enum& out,
              const std::vector<std::pair<std::string_view, Enum>>& options) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    std::string expected;
    if (it->is_string()) {
      const std::string value = it->get<std::string>();
      for (const auto& [name, e] : options) {
        if (name == value) {
          out = e;
          return;
        }
      }
    }
    for (const auto& [name, e] : options) {
      expected += expected.empty() ? "" : "|";
      expected += name;
    }
    fail(child(path, key), "expected one of " + expected);
  }

  // A number (uniform), an array (per node; the last value covers the rest)
  // or {"uniform": x, "per_node": [...]}.
  void node_costs(const json& obj, const std::string& path, const char* key, econ::NodeCosts& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string here = child(path, key);
    if (it->is_number()) {
      out = {it->get<double>(), {}};
      return;
    }
    if (it->is_array()) {
      if (it->empty()) {
        fail(here, "per-node list must not be empty");
        return;
      }
      out.per_node.clear();
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_number()) {
          fail(element(here, i), "expected a number");
          return;
        }
        out.per_node.push_back((*it)[i].get<double>());
      }
      out.uniform = out.per_node.back();
      return;
    }
    if (it->is_object()) {
      if (!object(*it, here, {"uniform", "per_node"})) return;
      number(*it, here, "uniform", out.uniform);
      out.per_node.clear();
      if (const auto list = it->find("per_node"); list != it->end()) {
        if (!list->is_array()) {
          fail(child(here, "per_node"), "expected an array");
          return;
        }
        for (std::size_t i = 0; i < list->size(); ++i) {
          if (!(*list)[i].is_number()) {
            fail(element(child(here, "per_node"), i), "expected a number");
            return;
          }
          out.per_node.push_back((*list)[i].get<double>());
        }
      }
      return;
    }
    fail(here, "expected a number, an array or an object");
  }

  // Calls `each(item, path)` for every element of an array field.
  template <typename Fn>
  void array(const json& obj, const std::string& path, const char* key, Fn&& each) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string here = child(path, key);
    if (!it->is_array()) {
      fail(here, "expected an array");
      return;
    }
    for (std::size_t i = 0; i < it->size(); ++i) each((*it)[i], element(here, i));
  }

  // Calls `body(sub, path)` when the object field is present and well formed.
  template <typename Fn>
  void section(const json& obj, const std::string& path, const char* key,
               std::initializer_list<std::string_view> allowed, Fn&& body) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string here = child(path, key);
    if (object(*it, here, allowed)) body(*it, here);
  }

 private:
  std::vector<std::string>& errors_;
};

const std::vector<std::pair<std::string_view, LinkWeightRule>> kWeightRules = {
    {"unit", LinkWeightRule::kUnit}, {"distance", LinkWeightRule::kDistance}};
const std::vector<std::pair<std::string_view, PathObjective>> kObjectives = {
    {"link_weight", PathObjective::kLinkWeight}, {"node_load", PathObjective::kNodeLoad}};
const std::vector<std::pair<std::string_view, Mode>> kModes = {
    {"manet", Mode::kManet}, {"sdn", Mode::kSdn}};

const char* name_of(LinkWeightRule r) { return r == LinkWeightRule::kUnit ? "unit" : "distance"; }
const char* name_of(PathObjective o) {
  return o == PathObjective::kLinkWeight ? "link_weight" : "node_load";
}

void read_document(const json& root, ScenarioConfig& c, Reader& r) {
  if (!r.object(root, "",
                {"seed", "duration_ms", "node_count", "radio_range_m", "area", "mobility", "link",
                 "traffic", "mode", "manet", "sdn", "message_sizes", "topology", "link_events",
                 "quarantine_events", "costs", "capacity", "vulnerabilities", "resources",
                 "cost_analysis"})) {
    return;
  }
  r.integer(root, "", "seed", c.seed);
  r.number(root, "", "duration_ms", c.duration_ms);
  r.integer(root, "", "node_count", c.node_count);
  r.number(root, "", "radio_range_m", c.radio_range_m);
  r.choice(root, "", "mode", c.mode, kModes);

  r.section(root, "", "area", {"width_m", "height_m"}, [&](const json& j, const std::string& p) {
    r.number(j, p, "width_m", c.area_width_m);
    r.number(j, p, "height_m", c.area_height_m);
  });
  r.section(root, "", "mobility", {"enabled", "speed_min_mps", "speed_max_mps", "pause_ms", "tick_ms"},
            [&](const json& j, const std::string& p) {
              r.boolean(j, p, "enabled", c.mobility_enabled);
              r.number(j, p, "speed_min_mps", c.speed_min_mps);
              r.number(j, p, "speed_max_mps", c.speed_max_mps);
              r.number(j, p, "pause_ms", c.pause_ms);
              r.number(j, p, "tick_ms", c.mobility_tick_ms);
            });
  r.section(root, "", "link", {"capacity_bps", "weight_rule", "processing_ms", "queue_limit", "ttl"},
            [&](const json& j, const std::string& p) {
              r.number(j, p, "capacity_bps", c.link_capacity_bps);
              r.choice(j, p, "weight_rule", c.weight_rule, kWeightRules);
              r.number(j, p, "processing_ms", c.processing_ms);
              r.integer(j, p, "queue_limit", c.queue_limit);
              r.integer(j, p, "ttl", c.ttl);
            });
  r.section(root, "", "traffic", {"flows", "random"}, [&](const json& j, const std::string& p) {
    r.array(j, p, "flows", [&](const json& f, const std::string& fp) {
      if (!r.object(f, fp, {"src", "dst", "rate_pps", "packet_size_bytes", "start_ms", "end_ms"})) return;
      TrafficFlow flow;
      r.node(f, fp, "src", flow.src);
      r.node(f, fp, "dst", flow.dst);
      r.number(f, fp, "rate_pps", flow.rate_pps);
      r.integer(f, fp, "packet_size_bytes", flow.packet_size_bytes);
      r.number(f, fp, "start_ms", flow.start_ms);
      r.number(f, fp, "end_ms", flow.end_ms);
      c.flows.push_back(flow);
    });
    r.section(j, p, "random", {"count", "rate_pps", "packet_size_bytes", "start_min_ms", "start_max_ms"},
              [&](const json& q, const std::string& qp) {
                r.integer(q, qp, "count", c.random_traffic.count);
                r.number(q, qp, "rate_pps", c.random_traffic.rate_pps);
                r.integer(q, qp, "packet_size_bytes", c.random_traffic.packet_size_bytes);
                r.number(q, qp, "start_min_ms", c.random_traffic.start_min_ms);
                r.number(q, qp, "start_max_ms", c.random_traffic.start_max_ms);
              });
  });
  r.section(root, "", "manet",
            {"hello_interval_ms", "allowed_hello_loss", "active_route_timeout_ms", "rreq_wait_ms",
             "rreq_retries", "buffer_limit"},
            [&](const json& j, const std::string& p) {
              r.number(j, p, "hello_interval_ms", c.manet.hello_interval_ms);
              r.integer(j, p, "allowed_hello_loss", c.manet.allowed_hello_loss);
              r.number(j, p, "active_route_timeout_ms", c.manet.active_route_timeout_ms);
              r.number(j, p, "rreq_wait_ms", c.manet.rreq_wait_ms);
              r.integer(j, p, "rreq_retries", c.manet.rreq_retries);
              r.integer(j, p, "buffer_limit", c.manet.buffer_limit);
            });
  r.section(root, "", "sdn",
            {"controller_compute_ms", "control_delay_ms", "status_interval_ms", "idle_timeout_ms",
             "drop_timeout_ms", "reoptimize", "objective", "buffer_limit"},
            [&](const json& j, const std::string& p) {
              r.number(j, p, "controller_compute_ms", c.sdn.controller_compute_ms);
              r.number(j, p, "control_delay_ms", c.sdn.control_delay_ms);
              r.number(j, p, "status_interval_ms", c.sdn.status_interval_ms);
              r.number(j, p, "idle_timeout_ms", c.sdn.idle_timeout_ms);
              r.number(j, p, "drop_timeout_ms", c.sdn.drop_timeout_ms);
              r.boolean(j, p, "reoptimize", c.sdn.reoptimize);
              r.choice(j, p, "objective", c.sdn.objective, kObjectives);
              r.integer(j, p, "buffer_limit", c.sdn.buffer_limit);
            });
  r.section(root, "", "message_sizes",
            {"rreq", "rrep", "rerr", "hello", "packet_in", "flow_mod", "status_report"},
            [&](const json& j, const std::string& p) {
              r.integer(j, p, "rreq", c.message_sizes.manet.rreq);
              r.integer(j, p, "rrep", c.message_sizes.manet.rrep);
              r.integer(j, p, "rerr", c.message_sizes.manet.rerr);
              r.integer(j, p, "hello", c.message_sizes.manet.hello);
              r.integer(j, p, "packet_in", c.message_sizes.sdn.packet_in);
              r.integer(j, p, "flow_mod", c.message_sizes.sdn.flow_mod);
              r.integer(j, p, "status_report", c.message_sizes.sdn.status_report);
            });
  r.section(root, "", "topology", {"nodes", "links"}, [&](const json& j, const std::string& p) {
    StaticTopology topo;
    r.array(j, p, "nodes", [&](const json& n, const std::string& np) {
      if (!r.object(n, np, {"x", "y", "node_weight"})) return;
      StaticNode node;
      r.number(n, np, "x", node.position.x);
      r.number(n, np, "y", node.position.y);
      r.number(n, np, "node_weight", node.node_weight);
      topo.nodes.push_back(node);
    });
    if (j.contains("links")) {
      topo.links.emplace();
      r.array(j, p, "links", [&](const json& l, const std::string& lp) {
        if (!r.object(l, lp, {"a", "b", "weight", "capacity_bps"})) return;
        StaticLink link;
        r.node(l, lp, "a", link.a);
        r.node(l, lp, "b", link.b);
        r.number(l, lp, "weight", link.weight);
        r.optional_number(l, lp, "capacity_bps", link.capacity_bps);
        topo.links->push_back(link);
      });
    }
    c.topology = std::move(topo);
  });
  r.array(root, "", "link_events", [&](const json& e, const std::string& ep) {
    if (!r.object(e, ep, {"time_ms", "a", "b", "up"})) return;
    LinkEvent ev;
    r.number(e, ep, "time_ms", ev.time_ms);
    r.node(e, ep, "a", ev.a);
    r.node(e, ep, "b", ev.b);
    r.boolean(e, ep, "up", ev.up);
    c.link_events.push_back(ev);
  });
  r.array(root, "", "quarantine_events", [&](const json& e, const std::string& ep) {
    if (!r.object(e, ep, {"time_ms", "node"})) return;
    QuarantineEvent ev;
    r.number(e, ep, "time_ms", ev.time_ms);
    r.node(e, ep, "node", ev.node);
    c.quarantine_events.push_back(ev);
  });
  r.section(root, "", "costs",
            {"hw_specialized", "hw_generic", "sw", "controller", "node_maintenance",
             "node_configuration", "node_monitoring", "controller_maintenance",
             "controller_configuration", "controller_monitoring", "node_reduced_maintenance"},
            [&](const json& j, const std::string& p) {
              econ::CostBook& b = c.costs;
              r.node_costs(j, p, "hw_specialized", b.hw_specialized);
              r.node_costs(j, p, "hw_generic", b.hw_generic);
              r.node_costs(j, p, "sw", b.sw);
              r.number(j, p, "controller", b.controller);
              r.node_costs(j, p, "node_maintenance", b.node_maintenance);
              r.node_costs(j, p, "node_configuration", b.node_configuration);
              r.node_costs(j, p, "node_monitoring", b.node_monitoring);
              r.number(j, p, "controller_maintenance", b.controller_maintenance);
              r.number(j, p, "controller_configuration", b.controller_configuration);
              r.number(j, p, "controller_monitoring", b.controller_monitoring);
              r.node_costs(j, p, "node_reduced_maintenance", b.node_reduced_maintenance);
            });
  r.section(root, "", "capacity", {"node", "controller", "clustered", "sliced"},
            [&](const json& j, const std::string& p) {
              r.node_costs(j, p, "node", c.capacity.node);
              r.number(j, p, "controller", c.capacity.controller);
              r.number(j, p, "clustered", c.capacity.clustered);
              r.number(j, p, "sliced", c.capacity.sliced);
            });
  r.array(root, "", "vulnerabilities", [&](const json& v, const std::string& vp) {
    if (!r.object(v, vp, {"probability", "impact", "host"})) return;
    econ::Vulnerability vuln;
    r.number(v, vp, "probability", vuln.probability);
    r.number(v, vp, "impact", vuln.impact);
    r.node(v, vp, "host", vuln.host);
    c.vulnerabilities.push_back(vuln);
  });
  r.section(root, "", "resources", {"bandwidth_total", "power_total", "demands"},
            [&](const json& j, const std::string& p) {
              r.number(j, p, "bandwidth_total", c.resources.bandwidth_total);
              r.number(j, p, "power_total", c.resources.power_total);
              r.array(j, p, "demands", [&](const json& d, const std::string& dp) {
                if (!r.object(d, dp, {"bandwidth", "power"})) return;
                econ::Demand demand;
                r.number(d, dp, "bandwidth", demand.bandwidth);
                r.number(d, dp, "power", demand.power);
                c.resources.demands.push_back(demand);
              });
            });
  r.section(root, "", "cost_analysis", {"n_min", "n_max", "eta_opt", "useful_bits", "total_bits"},
            [&](const json& j, const std::string& p) {
              r.integer(j, p, "n_min", c.cost_analysis.n_min);
              r.integer(j, p, "n_max", c.cost_analysis.n_max);
              r.optional_number(j, p, "eta_opt", c.cost_analysis.eta_opt);
              r.optional_number(j, p, "useful_bits", c.cost_analysis.useful_bits);
              r.optional_number(j, p, "total_bits", c.cost_analysis.total_bits);
            });
}

json node_costs_json(const econ::NodeCosts& c) {
  if (c.per_node.empty()) return c.uniform;
  return json{{"uniform", c.uniform}, {"per_node", c.per_node}};
}

class Checker {
 public:
  explicit Checker(std::vector<std::string>& errors) : errors_(errors) {}

  void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) errors_.push_back(path + ": " + what);
  }
  void positive(double v, const std::string& path) { require(v > 0.0, path, "must be > 0"); }
  void non_negative(double v, const std::string& path) { require(v >= 0.0, path, "must be >= 0"); }
  void node(NodeId id, int n, const std::string& path) {
    require(index_of(id) < static_cast<std::uint32_t>(std::max(n, 0)), path,
            "node id out of range (node_count " + std::to_string(n) + ")");
  }
  void costs(const econ::NodeCosts& c, const std::string& path) {
    non_negative(c.uniform, path);
    for (std::size_t i = 0; i < c.per_node.size(); ++i) non_negative(c.per_node[i], element(path, i));
  }

 private:
  std::vector<std::string>& errors_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_lines(errors)), errors_(std::move(errors)) {}

std::vector<std::string> validate_config(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  Checker k(errors);
  const int n = c.node_count;
  k.require(n >= 1, "node_count", "must be >= 1");
  k.require(n <= 100000, "node_count", "must be <= 100000");
  k.positive(c.duration_ms, "duration_ms");
  k.positive(c.area_width_m, "area.width_m");
  k.positive(c.area_height_m, "area.height_m");
  k.positive(c.radio_range_m, "radio_range_m");

  k.positive(c.speed_min_mps, "mobility.speed_min_mps");
  k.require(c.speed_max_mps >= c.speed_min_mps, "mobility.speed_max_mps", "must be >= speed_min_mps");
  k.non_negative(c.pause_ms, "mobility.pause_ms");
  k.positive(c.mobility_tick_ms, "mobility.tick_ms");

  k.positive(c.link_capacity_bps, "link.capacity_bps");
  k.non_negative(c.processing_ms, "link.processing_ms");
  k.require(c.queue_limit >= 1, "link.queue_limit", "must be >= 1");
  k.require(c.ttl >= 1, "link.ttl", "must be >= 1");

  for (std::size_t i = 0; i < c.flows.size(); ++i) {
    const TrafficFlow& f = c.flows[i];
    const std::string p = element("traffic.flows", i);
    k.node(f.src, n, p + ".src");
    k.node(f.dst, n, p + ".dst");
    k.require(f.src != f.dst, p + ".dst", "must differ from src");
    k.positive(f.rate_pps, p + ".rate_pps");
    k.require(f.packet_size_bytes >= 1, p + ".packet_size_bytes", "must be >= 1");
    k.non_negative(f.start_ms, p + ".start_ms");
    k.require(f.end_ms == 0.0 || f.end_ms > f.start_ms, p + ".end_ms", "must be 0 or > start_ms");
  }
  const RandomTraffic& rt = c.random_traffic;
  k.require(rt.count >= 0, "traffic.random.count", "must be >= 0");
  k.require(rt.count == 0 || n >= 2, "traffic.random.count", "random flows need node_count >= 2");
  k.positive(rt.rate_pps, "traffic.random.rate_pps");
  k.require(rt.packet_size_bytes >= 1, "traffic.random.packet_size_bytes", "must be >= 1");
  k.non_negative(rt.start_min_ms, "traffic.random.start_min_ms");
  k.require(rt.start_max_ms >= rt.start_min_ms, "traffic.random.start_max_ms", "must be >= start_min_ms");

  k.positive(c.manet.hello_interval_ms, "manet.hello_interval_ms");
  k.require(c.manet.allowed_hello_loss >= 1, "manet.allowed_hello_loss", "must be >= 1");
  k.positive(c.manet.active_route_timeout_ms, "manet.active_route_timeout_ms");
  k.positive(c.manet.rreq_wait_ms, "manet.rreq_wait_ms");
  k.require(c.manet.rreq_retries >= 0 && c.manet.rreq_retries <= 16, "manet.rreq_retries",
            "must be in [0, 16]");
  k.require(c.manet.buffer_limit >= 0, "manet.buffer_limit", "must be >= 0");

  k.non_negative(c.sdn.controller_compute_ms, "sdn.controller_compute_ms");
  k.non_negative(c.sdn.control_delay_ms, "sdn.control_delay_ms");
  k.positive(c.sdn.status_interval_ms, "sdn.status_interval_ms");
  k.positive(c.sdn.idle_timeout_ms, "sdn.idle_timeout_ms");
  k.positive(c.sdn.drop_timeout_ms, "sdn.drop_timeout_ms");
  k.require(c.sdn.buffer_limit >= 0, "sdn.buffer_limit", "must be >= 0");

  const auto size = [&](int v, const char* p) { k.require(v >= 1, p, "must be >= 1"); };
  size(c.message_sizes.manet.rreq, "message_sizes.rreq");
  size(c.message_sizes.manet.rrep, "message_sizes.rrep");
  size(c.message_sizes.manet.rerr, "message_sizes.rerr");
  size(c.message_sizes.manet.hello, "message_sizes.hello");
  size(c.message_sizes.sdn.packet_in, "message_sizes.packet_in");
  size(c.message_sizes.sdn.flow_mod, "message_sizes.flow_mod");
  size(c.message_sizes.sdn.status_report, "message_sizes.status_report");

  if (c.topology) {
    const StaticTopology& t = *c.topology;
    k.require(static_cast<int>(t.nodes.size()) == n, "topology.nodes",
              "must list exactly node_count nodes");
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const std::string p = element("topology.nodes", i);
      const Vec2 pos = t.nodes[i].position;
      k.require(pos.x >= 0.0 && pos.x <= c.area_width_m, p + ".x", "outside the area");
      k.require(pos.y >= 0.0 && pos.y <= c.area_height_m, p + ".y", "outside the area");
      k.positive(t.nodes[i].node_weight, p + ".node_weight");
    }
    if (t.links) {
      std::set<std::pair<NodeId, NodeId>> seen;
      for (std::size_t i = 0; i < t.links->size(); ++i) {
        const StaticLink& l = (*t.links)[i];
        const std::string p = element("topology.links", i);
        k.node(l.a, n, p + ".a");
        k.node(l.b, n, p + ".b");
        k.require(l.a != l.b, p + ".b", "self-link");
        k.require(seen.insert(std::minmax(l.a, l.b)).second, p, "duplicate link");
        k.positive(l.weight, p + ".weight");
        if (l.capacity_bps) k.positive(*l.capacity_bps, p + ".capacity_bps");
      }
    }
  }
  for (std::size_t i = 0; i < c.link_events.size(); ++i) {
    const LinkEvent& e = c.link_events[i];
    const std::string p = element("link_events", i);
    k.non_negative(e.time_ms, p + ".time_ms");
    k.node(e.a, n, p + ".a");
    k.node(e.b, n, p + ".b");
    k.require(e.a != e.b, p + ".b", "self-link");
  }
  for (std::size_t i = 0; i < c.quarantine_events.size(); ++i) {
    const QuarantineEvent& e = c.quarantine_events[i];
    const std::string p = element("quarantine_events", i);
    k.non_negative(e.time_ms, p + ".time_ms");
    k.node(e.node, n, p + ".node");
  }

  const econ::CostBook& b = c.costs;
  k.costs(b.hw_specialized, "costs.hw_specialized");
  k.costs(b.hw_generic, "costs.hw_generic");
  k.costs(b.sw, "costs.sw");
  k.non_negative(b.controller, "costs.controller");
  k.costs(b.node_maintenance, "costs.node_maintenance");
  k.costs(b.node_configuration, "costs.node_configuration");
  k.costs(b.node_monitoring, "costs.node_monitoring");
  k.non_negative(b.controller_maintenance, "costs.controller_maintenance");
  k.non_negative(b.controller_configuration, "costs.controller_configuration");
  k.non_negative(b.controller_monitoring, "costs.controller_monitoring");
  k.costs(b.node_reduced_maintenance, "costs.node_reduced_maintenance");

  k.costs(c.capacity.node, "capacity.node");
  k.non_negative(c.capacity.controller, "capacity.controller");
  k.non_negative(c.capacity.clustered, "capacity.clustered");
  k.non_negative(c.capacity.sliced, "capacity.sliced");

  for (std::size_t i = 0; i < c.vulnerabilities.size(); ++i) {
    const econ::Vulnerability& v = c.vulnerabilities[i];
    const std::string p = element("vulnerabilities", i);
    k.require(v.probability >= 0.0 && v.probability <= 1.0, p + ".probability", "must be in [0, 1]");
    k.non_negative(v.impact, p + ".impact");
    k.node(v.host, n, p + ".host");
  }

  k.positive(c.resources.bandwidth_total, "resources.bandwidth_total");
  k.positive(c.resources.power_total, "resources.power_total");
  for (std::size_t i = 0; i < c.resources.demands.size(); ++i) {
    const std::string p = element("resources.demands", i);
    k.non_negative(c.resources.demands[i].bandwidth, p + ".bandwidth");
    k.non_negative(c.resources.demands[i].power, p + ".power");
  }

  const CostAnalysis& ca = c.cost_analysis;
  k.require(ca.n_min >= 0, "cost_analysis.n_min", "must be >= 0");
  k.require(ca.n_max >= ca.n_min, "cost_analysis.n_max", "must be >= n_min");
  k.require(ca.n_max - ca.n_min <= 1000000, "cost_analysis.n_max", "range too large");
  if (ca.eta_opt) k.positive(*ca.eta_opt, "cost_analysis.eta_opt");
  k.require(ca.useful_bits.has_value() == ca.total_bits.has_value(), "cost_analysis",
            "useful_bits and total_bits go together");
  if (ca.useful_bits) k.non_negative(*ca.useful_bits, "cost_analysis.useful_bits");
  if (ca.total_bits) k.positive(*ca.total_bits, "cost_analysis.total_bits");
  return errors;
}

ScenarioConfig parse_config(std::string_view text) {
  json root;
  // An empty or whitespace-only document means "all defaults".
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    root = json::object();
  } else {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError({std::string("<document>: ") + e.what()});
    }
  }
  ScenarioConfig config;
  std::vector<std::string> errors;
  Reader reader(errors);
  read_document(root, config, reader);
  // Fields that failed to read keep their defaults, so range checks on the
  // rest still report meaningful errors.
  const std::vector<std::string> invalid = validate_config(config);
  errors.insert(errors.end(), invalid.begin(), invalid.end());
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["duration_ms"] = c.duration_ms;
  j["node_count"] = c.node_count;
  j["radio_range_m"] = c.radio_range_m;
  j["mode"] = to_string(c.mode);
  j["area"] = {{"width_m", c.area_width_m}, {"height_m", c.area_height_m}};
  j["mobility"] = {{"enabled", c.mobility_enabled},
                   {"speed_min_mps", c.speed_min_mps},
                   {"speed_max_mps", c.speed_max_mps},
                   {"pause_ms", c.pause_ms},
                   {"tick_ms", c.mobility_tick_ms}};
  j["link"] = {{"capacity_bps", c.link_capacity_bps},
               {"weight_rule", name_of(c.weight_rule)},
               {"processing_ms", c.processing_ms},
               {"queue_limit", c.queue_limit},
               {"ttl", c.ttl}};
  json flows = json::array();
  for (const TrafficFlow& f : c.flows) {
    flows.push_back({{"src", index_of(f.src)},
                     {"dst", index_of(f.dst)},
                     {"rate_pps", f.rate_pps},
                     {"packet_size_bytes", f.packet_size_bytes},
                     {"start_ms", f.start_ms},
                     {"end_ms", f.end_ms}});
  }
  const RandomTraffic& rt = c.random_traffic;
  j["traffic"] = {{"flows", flows},
                  {"random",
                   {{"count", rt.count},
                    {"rate_pps", rt.rate_pps},
                    {"packet_size_bytes", rt.packet_size_bytes},
                    {"start_min_ms", rt.start_min_ms},
                    {"start_max_ms", rt.start_max_ms}}}};
  j["manet"] = {{"hello_interval_ms", c.manet.hello_interval_ms},
                {"allowed_hello_loss", c.manet.allowed_hello_loss},
                {"active_route_timeout_ms", c.manet.active_route_timeout_ms},
                {"rreq_wait_ms", c.manet.rreq_wait_ms},
                {"rreq_retries", c.manet.rreq_retries},
                {"buffer_limit", c.manet.buffer_limit}};
  j["sdn"] = {{"controller_compute_ms", c.sdn.controller_compute_ms},
              {"control_delay_ms", c.sdn.control_delay_ms},
              {"status_interval_ms", c.sdn.status_interval_ms},
              {"idle_timeout_ms", c.sdn.idle_timeout_ms},
              {"drop_timeout_ms", c.sdn.drop_timeout_ms},
              {"reoptimize", c.sdn.reoptimize},
              {"objective", name_of(c.sdn.objective)},
              {"buffer_limit", c.sdn.buffer_limit}};
  const MessageSizes& ms = c.message_sizes;
  j["message_sizes"] = {{"rreq", ms.manet.rreq},          {"rrep", ms.manet.rrep},
                        {"rerr", ms.manet.rerr},          {"hello", ms.manet.hello},
                        {"packet_in", ms.sdn.packet_in},  {"flow_mod", ms.sdn.flow_mod},
                        {"status_report", ms.sdn.status_report}};
  if (c.topology) {
    json nodes = json::array();
    for (const StaticNode& n : c.topology->nodes) {
      nodes.push_back({{"x", n.position.x}, {"y", n.position.y}, {"node_weight", n.node_weight}});
    }
    json topo = {{"nodes", nodes}};
    if (c.topology->links) {
      json links = json::array();
      for (const StaticLink& l : *c.topology->links) {
        json link = {{"a", index_of(l.a)}, {"b", index_of(l.b)}, {"weight", l.weight}};
        if (l.capacity_bps) link["capacity_bps"] = *l.capacity_bps;
        links.push_back(link);
      }
      topo["links"] = links;
    }
    j["topology"] = topo;
  }
  json link_events = json::array();
  for (const LinkEvent& e : c.link_events) {
    link_events.push_back(
        {{"time_ms", e.time_ms}, {"a", index_of(e.a)}, {"b", index_of(e.b)}, {"up", e.up}});
  }
  j["link_events"] = link_events;
  json quarantine = json::array();
  for (const QuarantineEvent& e : c.quarantine_events) {
    quarantine.push_back({{"time_ms", e.time_ms}, {"node", index_of(e.node)}});
  }
  j["quarantine_events"] = quarantine;
  const econ::CostBook& b = c.costs;
  j["costs"] = {{"hw_specialized", node_costs_json(b.hw_specialized)},
                {"hw_generic", node_costs_json(b.hw_generic)},
                {"sw", node_costs_json(b.sw)},
                {"controller", b.controller},
                {"node_maintenance", node_costs_json(b.node_maintenance)},
                {"node_configuration", node_costs_json(b.node_configuration)},
                {"node_monitoring", node_costs_json(b.node_monitoring)},
                {"controller_maintenance", b.controller_maintenance},
                {"controller_configuration", b.controller_configuration},
                {"controller_monitoring", b.controller_monitoring},
                {"node_reduced_maintenance", node_costs_json(b.node_reduced_maintenance)}};
  j["capacity"] = {{"node", node_costs_json(c.capacity.node)},
                   {"controller", c.capacity.controller},
                   {"clustered", c.capacity.clustered},
                   {"sliced", c.capacity.sliced}};
  json vulns = json::array();
  for (const econ::Vulnerability& v : c.vulnerabilities) {
    vulns.push_back({{"probability", v.probability}, {"impact", v.impact}, {"host", index_of(v.host)}});
  }
  j["vulnerabilities"] = vulns;
  json demands = json::array();
  for (const econ::Demand& d : c.resources.demands) {
    demands.push_back({{"bandwidth", d.bandwidth}, {"power", d.power}});
  }
  j["resources"] = {{"bandwidth_total", c.resources.bandwidth_total},
                    {"power_total", c.resources.power_total},
                    {"demands", demands}};
  json analysis = {{"n_min", c.cost_analysis.n_min}, {"n_max", c.cost_analysis.n_max}};
  if (c.cost_analysis.eta_opt) analysis["eta_opt"] = *c.cost_analysis.eta_opt;
  if (c.cost_analysis.useful_bits) analysis["useful_bits"] = *c.cost_analysis.useful_bits;
  if (c.cost_analysis.total_bits) analysis["total_bits"] = *c.cost_analysis.total_bits;
  j["cost_analysis"] = analysis;
  return j.dump(2);
}

ManetParams manet_params(const ScenarioConfig& c) {
  ManetParams p;
  p.sizes = c.message_sizes.manet;
  p.processing_ms = c.processing_ms;
  p.active_route_timeout_ms = c.manet.active_route_timeout_ms;
  return p;
}

SdnParams sdn_params(const ScenarioConfig& c) {
  SdnParams p;
  p.compute_ms = c.sdn.controller_compute_ms;
  p.control_delay_ms = c.sdn.control_delay_ms;
  p.status_interval_ms = c.sdn.status_interval_ms;
  p.idle_timeout_ms = c.sdn.idle_timeout_ms;
  p.drop_timeout_ms = c.sdn.drop_timeout_ms;
  p.reoptimize = c.sdn.reoptimize;
  p.objective = c.sdn.objective;
  p.sizes = c.message_sizes.sdn;
  return p;
}

}  // namespace sdnmanet
