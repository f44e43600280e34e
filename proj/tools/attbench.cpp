// attbench: run attitude-estimation experiments from a JSON config.
//
//   attbench run <config.json> [-o dir] [--serial]
//   attbench list-algorithms
//   attbench preset paper --set nonlinear [-o file]
//   attbench stats <plot.csv> [--from 8 --to 30]
//
// Exit codes: 0 ok, 2 config or usage error, 3 runtime error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "attitude/errors.hpp"
#include "attitude/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int cmd_run(const std::string& path, const std::string& out_override, bool serial) {
  att::ExperimentConfig cfg = att::load_config(path);
  std::string dir = cfg.output.dir;
  if (const char* env = std::getenv("ATTBENCH_OUT"); env && *env) dir = env;
  if (!out_override.empty()) dir = out_override;

  const auto runs =
      att::run_experiment(cfg, serial ? att::Execution::Serial : att::Execution::Parallel);
  att::write_outputs(cfg, runs, dir);

  const auto table = att::summarize_ensemble(runs, cfg.window_start, cfg.window_end);
  att::emit_table(std::cout, table);
  for (const auto& r : runs)
    if (r.failed) std::cerr << "warning: " << r.label << " seed " << r.seed << ": " << r.failure << "\n";
  std::cerr << "wrote " << dir << "/table.csv\n";
  return 0;
}

int cmd_list() {
  for (auto id : att::all_algorithms())
    std::cout << att::algorithm_name(id) << "\t" << att::algorithm_description(id) << "\n";
  return 0;
}

int cmd_preset(const std::string& which, const std::string& set, const std::string& out) {
  if (which != "paper") throw att::Error(att::Errc::ConfigError, "unknown preset '" + which + "'");
  const std::string text = att::dump_config(att::paper_preset(att::parse_preset_set(set)));
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw att::Error(att::Errc::IoError, "cannot write '" + out + "'");
    os << text;
  }
  return 0;
}

// Reads a plot CSV (t, dist, alpha_deg, ...) and prints one summary row.
int cmd_stats(const std::string& path, double from, double to) {
  std::ifstream in(path);
  if (!in) throw att::Error(att::Errc::IoError, "cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line.rfind("t,dist,alpha_deg", 0) != 0)
    throw att::Error(att::Errc::IoError, "expected a plot CSV starting with t,dist,alpha_deg");
  std::vector<double> t, d, a;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f;
    double v[3];
    for (double& x : v) {
      std::getline(ss, f, ',');
      x = f == "nan" ? std::nan("") : std::stod(f);
    }
    t.push_back(v[0]);
    d.push_back(v[1]);
    a.push_back(v[2]);
  }
  const auto s = att::summarize_series(path, t, d, a, from, to);
  att::emit_table(std::cout, {s});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attitude estimation benchmark"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config")->required();
  run->add_option("-o,--out", out_dir, "output directory (overrides config and ATTBENCH_OUT)");
  run->add_flag("--serial", serial, "single-threaded reference execution");

  auto* list = app.add_subcommand("list-algorithms", "list registered algorithms");

  std::string preset_name, preset_out, preset_set = "nonlinear";
  auto* preset = app.add_subcommand("preset", "print a built-in config");
  preset->add_option("name", preset_name, "preset family (paper)")->required();
  preset->add_option("--set", preset_set, "determination, gaussian or nonlinear")
      ->check(CLI::IsMember({"determination", "gaussian", "nonlinear"}));
  preset->add_option("-o,--out", preset_out, "write to file instead of stdout");

  std::string stats_path;
  double from = 8.0, to = 30.0;
  auto* stats = app.add_subcommand("stats", "summarize a plot CSV over a window");
  stats->add_option("csv", stats_path, "plot CSV")->required();
  stats->add_option("--from", from, "window start [s]");
  stats->add_option("--to", to, "window end [s]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, serial);
    if (*list) return cmd_list();
    if (*preset) return cmd_preset(preset_name, preset_set, preset_out);
    if (*stats) return cmd_stats(stats_path, from, to);
  } catch (const att::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == att::Errc::ConfigError ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
