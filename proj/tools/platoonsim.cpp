// Command-line front end for the platoon simulator.
//
//   platoonsim run <scenario> [--seed N] [--out-dir DIR] [--roi MODE]
//                  [--mitigation on|off] [--serial] [--metric NAME]...
//   platoonsim compare <dirA> <dirB> [--metric NAME] [--plot FILE]
//   platoonsim list-scenarios [--dir DIR]
//
// `run` writes per-truck CSVs, an event log, a human-readable summary and
// one gnuplot-ready .dat file per requested metric. The exit code reports
// the run outcome: 0 clean, 2 aborted (collision / jackknife).

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "platoon/harness/run_log.hpp"
#include "platoon/harness/scenario.hpp"
#include "platoon/harness/simulator.hpp"

namespace fs = std::filesystem;

namespace {

std::string default_scenario_dir() {
  if (const char* env = std::getenv("PLATOONSIM_SCENARIO_DIR")) return env;
  return "scenarios";
}

// Accept either a path to a .scn file or a bare scenario name looked up in
// the scenario directory.
std::string resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  const fs::path named = fs::path(default_scenario_dir()) / (arg + ".scn");
  if (fs::exists(named)) return named.string();
  return arg;  // let the loader produce the error message
}

int cmd_run(const std::string& scenario_arg, long long seed_override,
            const std::string& out_dir, const std::string& roi_override,
            const std::string& mitigation_override, bool serial,
            const std::vector<std::string>& metrics) {
  platoon::ScenarioSpec spec =
      platoon::ScenarioSpec::load(resolve_scenario(scenario_arg));
  if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
  if (roi_override == "static") {
    spec.roi = {platoon::RoiMode::Static, platoon::RoiMode::Static,
                platoon::RoiMode::Static};
  } else if (roi_override == "dynamic") {
    spec.roi = {platoon::RoiMode::Dynamic, platoon::RoiMode::Dynamic,
                platoon::RoiMode::Dynamic};
  }
  if (mitigation_override == "on") spec.mitigation = true;
  else if (mitigation_override == "off") spec.mitigation = false;

  platoon::RunOptions opts;
  opts.parallel_sensing = !serial;
  const platoon::RunLog log = platoon::run_scenario(spec, opts);

  const std::string dir = out_dir.empty() ? "out/" + spec.name : out_dir;
  platoon::export_csv(log, dir);
  for (const std::string& m : metrics) {
    platoon::export_plotdata(log, m, dir + "/" + m + ".dat");
  }

  std::cout << "scenario " << spec.name << " seed " << spec.seed << ": "
            << log.ticks() << " ticks, " << log.events.size() << " events -> "
            << dir << "\n";
  for (int truck = 0; truck < 3; ++truck) {
    const platoon::Role r = static_cast<platoon::Role>(truck);
    const platoon::TruckSummary s = log.summarize(r);
    std::cout << "  " << platoon::role_name(r) << ": v_max " << s.v_max
              << " lat_rms " << s.lat_rms << " lat_max " << s.lat_max_abs
              << " gap [" << s.gap_min << ", " << s.gap_max << "]\n";
  }
  if (log.aborted) {
    std::cout << "run aborted: " << log.abort_reason << "\n";
    return 2;
  }
  return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b,
                const std::string& metric, const std::string& plot) {
  const platoon::RunLog a = platoon::import_csv(dir_a);
  const platoon::RunLog b = platoon::import_csv(dir_b);
  const platoon::CompareReport rep = platoon::compare_runs(a, b, metric);
  std::cout << rep.text;
  if (!plot.empty()) {
    platoon::export_compare_plotdata(a, b, metric, plot);
    std::cout << "wrote " << plot << "\n";
  }
  return 0;
}

int cmd_list(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    std::cerr << "no scenario directory at " << dir << "\n";
    return 1;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".scn") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& p : files) {
    try {
      const platoon::ScenarioSpec spec = platoon::ScenarioSpec::load(p.string());
      std::cout << spec.name << "\t" << spec.duration << " s\tseed "
                << spec.seed << "\t" << p.string() << "\n";
    } catch (const std::exception& e) {
      std::cout << p.filename().string() << "\tINVALID: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-truck platoon simulator"};
  app.require_subcommand(1);

  // run
  std::string scenario;
  long long seed = -1;
  std::string out_dir;
  std::string roi = "file";
  std::string mitigation = "file";
  bool serial = false;
  std::vector<std::string> metrics;
  CLI::App* run = app.add_subcommand("run", "simulate a scenario");
  run->add_option("scenario", scenario,
                  "scenario file or bare name under the scenario dir")
      ->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out-dir", out_dir, "output directory (default out/<name>)");
  run->add_option("--roi", roi, "lane-search region for every truck")
      ->check(CLI::IsMember({"file", "static", "dynamic"}));
  run->add_option("--mitigation", mitigation, "camera-fault fallback")
      ->check(CLI::IsMember({"file", "on", "off"}));
  run->add_flag("--serial", serial, "disable the per-truck sensing threads");
  run->add_option("--metric", metrics, "also write <metric>.dat plot data");

  // compare
  std::string dir_a, dir_b, cmp_metric = "v", plot;
  CLI::App* cmp = app.add_subcommand("compare", "diff two exported runs");
  cmp->add_option("dirA", dir_a, "first run directory")->required();
  cmp->add_option("dirB", dir_b, "second run directory")->required();
  cmp->add_option("--metric", cmp_metric, "column to diff (default v)");
  cmp->add_option("--plot", plot, "write side-by-side plot data here");

  // list-scenarios
  std::string list_dir = default_scenario_dir();
  CLI::App* list = app.add_subcommand("list-scenarios", "show bundled runs");
  list->add_option("--dir", list_dir, "scenario directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(scenario, seed, out_dir,
                     roi == "file" ? "" : roi,
                     mitigation == "file" ? "" : mitigation, serial, metrics);
    }
    if (cmp->parsed()) return cmd_compare(dir_a, dir_b, cmp_metric, plot);
    return cmd_list(list_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
