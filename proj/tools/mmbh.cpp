// mmbh: run scheme comparisons, oracle gap reports and graph dumps.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mmbh/config.hpp"
#include "mmbh/contention.hpp"
#include "mmbh/error.hpp"
#include "mmbh/experiment.hpp"
#include "mmbh/schedule_io.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string output = "-";
  std::optional<std::uint64_t> seed;
  int verbosity = 0;
};

mmbh::ExperimentConfig load(const Common& c) {
  mmbh::ExperimentConfig out =
      c.config_path.empty() ? mmbh::ExperimentConfig{} : mmbh::load_config(c.config_path);
  if (c.seed) out.base_seed = *c.seed;
  return out;
}

// Writes to stdout for "-", otherwise to a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw mmbh::ConfigError(fmt::format("cannot write '{}'", path));
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int run_cmd(const Common& c, const std::string& sweep, const std::string& schemes,
            std::optional<int> trials, unsigned threads, const std::string& dump, bool stamp) {
  mmbh::ExperimentConfig cfg = load(c);
  if (!sweep.empty()) cfg.sweep = mmbh::parse_sweep(sweep);
  if (!schemes.empty()) cfg.schemes = mmbh::parse_schemes(schemes);
  if (trials) cfg.trials = *trials;
  cfg.validate();

  mmbh::RunOptions opts;
  opts.threads = threads;
  opts.on_failure = [&](const mmbh::TrialFailure& f) {
    fmt::print(std::cerr, "trial {} at {}={:g} failed: {}\n", f.trial, mmbh::to_string(f.sweep_var),
               f.sweep_value, f.reason);
  };
  int point = -1;
  double last_value = 0.0;
  opts.on_trial = [&](const mmbh::TrialOutcome& o) {
    if (point < 0 || o.sweep_value != last_value) {
      ++point;
      last_value = o.sweep_value;
    }
    if (c.verbosity >= 2) {
      fmt::print(std::cerr, "point {} trial {}: {} pairings, hash {:016x}\n", point, o.trial,
                 o.schemes.proposed.pairings.size(), o.scenario.hash());
    }
    if (dump.empty()) return;
    std::filesystem::create_directories(dump);
    std::ofstream f(std::filesystem::path(dump) / fmt::format("p{:02d}_t{:03d}.json", point, o.trial));
    f << mmbh::to_json(o).dump(2) << '\n';
  };
  if (c.verbosity >= 1) {
    fmt::print(std::cerr, "running {} trial(s), sweep {}, reference {}\n", cfg.trials,
               mmbh::to_string(cfg.sweep.var), mmbh::to_string(cfg.reference));
  }
  const mmbh::ExperimentResult result = mmbh::run_experiment(cfg, opts);
  Output out(c.output);
  std::optional<std::string> header;
  if (stamp) header = fmt::format("mmbh run {} base_seed={}", timestamp(), cfg.base_seed);
  mmbh::write_csv(out.stream(), result, header);
  if (c.verbosity >= 1) {
    fmt::print(std::cerr, "{} rows, {} failed trial(s)\n", result.rows.size(), result.failures.size());
  }
  return result.failures.empty() ? 0 : 3;
}

int gap_cmd(const Common& c, mmbh::GapOptions g, int cta_count) {
  mmbh::ExperimentConfig cfg = load(c);
  mmbh::SystemParams params = cfg.params;
  params.cta_count = cta_count;
  g.seed = cfg.base_seed;
  g.reference = cfg.reference;
  const auto rows = mmbh::run_gap(g, params);
  Output out(c.output);
  mmbh::write_gap_csv(out.stream(), rows);
  return 0;
}

int graph_cmd(const Common& c, int trial) {
  const mmbh::ExperimentConfig cfg = load(c);
  const mmbh::Scenario sc = mmbh::generate_scenario(cfg, static_cast<std::uint32_t>(trial));
  Output out(c.output);
  mmbh::build_graph(sc, cfg.params).write_edge_list(out.stream());
  return 0;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app->add_option("-o,--output", c.output, "output path, '-' for stdout");
  app->add_option("-s,--seed", c.seed, "override base_seed");
  app->add_flag("-v,--verbose", c.verbosity, "repeat for more detail on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave backhaul scheduling and power-control simulator"};
  app.require_subcommand(1);

  Common common;
  std::string sweep, schemes, dump;
  std::optional<int> trials;
  unsigned threads = 1;
  bool no_stamp = false;
  auto* run = app.add_subcommand("run", "compare schemes over random scenarios, CSV out");
  add_common(run, common);
  run->add_option("--sweep", sweep, "var:v1,v2,... (sigma, load, area_side, max_power_dbm, flow_count)");
  run->add_option("--schemes", schemes, "comma list of proposed, tdma, ctfp");
  run->add_option("-n,--trials", trials, "trials per sweep point");
  run->add_option("-j,--threads", threads, "worker threads, 0 = all cores");
  run->add_option("--dump", dump, "directory for per-trial JSON schedule dumps");
  run->add_flag("--no-stamp", no_stamp, "omit the timestamp line");

  mmbh::GapOptions gap_opts;
  int gap_m = 16;
  auto* gap = app.add_subcommand("gap", "heuristic vs exhaustive oracle on tiny instances");
  add_common(gap, common);
  gap->add_option("--instances", gap_opts.instances, "number of instances");
  gap->add_option("--max-flows", gap_opts.max_flows, "largest flow count (<= 5)");
  gap->add_option("--nodes", gap_opts.node_count, "nodes per instance");
  gap->add_option("--area", gap_opts.area_side_m, "square side in metres");
  gap->add_option("-m,--cta-count", gap_m, "CTAs per superframe (<= 24)");

  int graph_trial = 0;
  auto* graph = app.add_subcommand("graph", "edge list of one generated scenario's contention graph");
  add_common(graph, common);
  graph->add_option("-t,--trial", graph_trial, "trial index");

  auto* show = app.add_subcommand("config", "print the effective configuration");
  add_common(show, common);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_cmd(common, sweep, schemes, trials, threads, dump, !no_stamp);
    if (*gap) return gap_cmd(common, gap_opts, gap_m);
    if (*graph) return graph_cmd(common, graph_trial);
    if (*show) {
      Output out(common.output);
      out.stream() << mmbh::to_text(load(common));
      return 0;
    }
  } catch (const mmbh::Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
