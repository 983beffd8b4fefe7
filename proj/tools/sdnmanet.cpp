// sdnmanet: run, compare, sweep and cost-analyze ad hoc network scenarios.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sdnmanet/experiments.hpp"
#include "sdnmanet/scenario.hpp"
#include "sdnmanet/simulation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kIoError = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  int seeds = 10;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  std::string events;
};

sdnmanet::ScenarioConfig load(const Options& o) {
  std::string text;
  if (!o.scenario.empty()) {
    std::ifstream in(o.scenario);
    if (!in) throw IoError("cannot read scenario '" + o.scenario + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  sdnmanet::ScenarioConfig config = sdnmanet::parse_config(text);
  if (o.seed) config.seed = *o.seed;
  if (o.mode) config.mode = sdnmanet::parse_mode(*o.mode);
  return config;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out || !(out << text)) throw IoError("cannot write '" + o.out + "'");
}

std::unique_ptr<std::ofstream> open_events(const Options& o) {
  if (o.events.empty()) return nullptr;
  auto file = std::make_unique<std::ofstream>(o.events);
  if (!*file) throw IoError("cannot write events to '" + o.events + "'");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reactive versus controller-managed ad hoc network simulator"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "Scenario JSON (defaults when omitted)");
    sub->add_option("--seed", o.seed, "Override the scenario seed");
    sub->add_option("--out", o.out, "Write output here instead of stdout");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario in one mode");
  common(run);
  run->add_option("--mode", o.mode, "manet or sdn")->check(CLI::IsMember({"manet", "sdn"}));
  run->add_option("--emit-events", o.events, "Write the JSON-lines event trace here");

  CLI::App* cmp = app.add_subcommand("compare", "Run both modes on the same seed");
  common(cmp);
  cmp->add_option("--emit-events", o.events, "Write both event traces here, manet first");

  CLI::App* sw = app.add_subcommand("sweep", "Run consecutive seeds and aggregate");
  common(sw);
  sw->add_option("--mode", o.mode, "manet or sdn")->check(CLI::IsMember({"manet", "sdn"}));
  sw->add_option("--seeds", o.seeds, "Number of seeds")->check(CLI::PositiveNumber);
  sw->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  CLI::App* cost = app.add_subcommand("cost", "Cost, efficiency, capacity and risk analysis");
  common(cost);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const sdnmanet::ScenarioConfig config = load(o);
    const sdnmanet::OutputFormat format = sdnmanet::parse_format(o.format);
    if (run->parsed()) {
      auto events = open_events(o);
      emit(o, sdnmanet::format_run(sdnmanet::run_scenario(config, config.mode, events.get()), format));
    } else if (cmp->parsed()) {
      auto events = open_events(o);
      sdnmanet::PairedRun paired;
      paired.manet = sdnmanet::run_scenario(config, sdnmanet::Mode::kManet, events.get());
      paired.sdn = sdnmanet::run_scenario(config, sdnmanet::Mode::kSdn, events.get());
      paired.table = sdnmanet::compare(paired.manet, paired.sdn);
      emit(o, sdnmanet::format_compare(paired, format));
    } else if (sw->parsed()) {
      emit(o, sdnmanet::format_sweep(
                  sdnmanet::sweep(config, config.mode, config.seed, o.seeds, o.threads), format));
    } else if (cost->parsed()) {
      emit(o, sdnmanet::format_cost(sdnmanet::cost_analysis(config), format));
    }
  } catch (const sdnmanet::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
