#include "trackfuse/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "trackfuse/pipeline.hpp"

namespace trackfuse {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInputData = 2;
constexpr int kExitInternal = 3;

void print_manifest(const std::vector<std::filesystem::path>& written) {
  for (const auto& path : written) std::cout << "wrote " << path.string() << '\n';
}

std::vector<std::string> split_csv_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string stages;
  std::string estimate;
  std::string ground_truth;
  std::vector<std::string> fuse_inputs;  // camera=path
};

int dispatch(const std::string& command, const Options& opt) {
  if (command == "simulate") {
    ScenarioFile file = load_scenario_config(opt.config);
    if (opt.seed) file.scenario.seed = *opt.seed;
    print_manifest(run_simulate(file, opt.out_dir));
    return kExitOk;
  }
  if (command == "track") {
    print_manifest(run_track(load_run_config(opt.config), opt.out_dir));
    return kExitOk;
  }
  if (command == "fuse") {
    const RunConfig cfg = load_run_config(opt.config);
    std::map<std::string, std::filesystem::path> inputs;
    for (const std::string& entry : opt.fuse_inputs) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("--input expects camera=path, got '" + entry + "'");
      inputs.emplace(entry.substr(0, eq), entry.substr(eq + 1));
    }
    if (inputs.empty()) {
      // Default to the track command's outputs for the configured cameras.
      for (const auto& [camera, path] : cfg.detections) {
        (void)path;
        inputs.emplace(camera, std::filesystem::path(opt.out_dir) /
                                   ("filtered_" + camera + ".csv"));
      }
    }
    print_manifest(run_fuse(inputs, cfg.fusion, opt.out_dir));
    return kExitOk;
  }
  if (command == "evaluate") {
    const MseStats stats = run_evaluate(opt.estimate, opt.ground_truth);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d", stats.mse, stats.rmse,
                  stats.mean_dist, stats.frames);
    std::cout << "mse,rmse,mean_dist,frames\n" << buf << '\n';
    return kExitOk;
  }
  if (command == "pipeline") {
    const RunConfig cfg = load_run_config(opt.config);
    const auto written =
        run_pipeline(cfg, opt.out_dir, split_csv_list(opt.stages));
    print_manifest(written);
    const auto report = std::filesystem::path(opt.out_dir) / "report.txt";
    std::ifstream in(report);
    std::cout << in.rdbuf();
    return kExitOk;
  }
  throw std::logic_error("unreachable command " + command);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Multi-camera tracking and fusion toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic scenario's ground truth and detections");
  simulate->add_option("--config", opt.config, "scenario config file")->required();
  simulate->add_option("--out", opt.out_dir, "output directory");
  simulate->add_option("--seed", opt.seed, "override the config's random seed");

  auto* track = app.add_subcommand(
      "track", "Run per-camera tracking and write filtered trajectories");
  track->add_option("--config", opt.config, "run config file")->required();
  track->add_option("--out", opt.out_dir, "output directory");

  auto* fuse = app.add_subcommand(
      "fuse", "Fuse per-camera filtered trajectories on the base plane");
  fuse->add_option("--config", opt.config, "run config file")->required();
  fuse->add_option("--out", opt.out_dir, "output directory");
  fuse->add_option("--input", opt.fuse_inputs,
                   "camera=trajectory.csv (default: filtered_<camera>.csv in --out)");

  auto* evaluate = app.add_subcommand(
      "evaluate", "MSE of one estimated trajectory against ground truth");
  evaluate->add_option("--estimate", opt.estimate, "estimated trajectory CSV")->required();
  evaluate->add_option("--gt", opt.ground_truth, "ground-truth CSV")->required();

  auto* pipeline = app.add_subcommand(
      "pipeline", "Full chain: ingest, track, fuse and report staged MSE");
  pipeline->add_option("--config", opt.config, "run config file")->required();
  pipeline->add_option("--out", opt.out_dir, "output directory");
  pipeline->add_option("--stages", opt.stages,
                       "report filter: comma list of raw,filtered,weighted,wta");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, opt);
  } catch (const ConfigError& e) {
    std::cerr << "error(config): " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error(input): " << e.what() << '\n';
    return kExitInputData;
  } catch (const NoOverlap& e) {
    std::cerr << "error(evaluate): " << e.what() << '\n';
    return kExitInputData;
  } catch (const UnsortedInput& e) {
    std::cerr << "error(input): " << e.what() << '\n';
    return kExitInputData;
  } catch (const Error& e) {
    std::cerr << "error(internal): " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error(internal): " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace trackfuse
