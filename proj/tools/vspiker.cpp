#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vspiker/commands.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out_dir;
  std::string checkpoint;
  std::string detection;
  std::string spec;
  std::optional<double> joules_per_mac;
};

vspiker::RunConfig resolve_config(const Flags& f) {
  auto config = vspiker::load_run_config(f.config);
  if (f.seed) config.seed = *f.seed;
  if (f.workers) config.workers = *f.workers;
  if (f.out_dir) config.out_dir = *f.out_dir;
  return config;
}

void add_common(CLI::App* cmd, Flags& f, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", f.config, "INI run configuration");
  if (needs_config) opt->required();
  cmd->add_option("--seed", f.seed, "Seed overriding [run] seed");
  cmd->add_option("--out-dir", f.out_dir, "Output directory overriding [run] out_dir");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiking-network anomaly detector for univariate time series"};
  app.require_subcommand(1);
  Flags f;

  auto* train = app.add_subcommand("train", "Train a network and write a checkpoint");
  add_common(train, f);

  auto* detect = app.add_subcommand("detect", "Run a checkpoint over a series and write detection.csv");
  add_common(detect, f);
  detect->add_option("--checkpoint", f.checkpoint, "Checkpoint written by train")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score detections against labels");
  add_common(evaluate, f);
  auto* det_opt = evaluate->add_option("--detection", f.detection, "Detection CSV");
  auto* ck_opt = evaluate->add_option("--checkpoint", f.checkpoint, "Checkpoint to run instead");
  det_opt->excludes(ck_opt);

  auto* grid = app.add_subcommand("grid-search", "Cross-validated parameter sweep; writes ranking.csv");
  add_common(grid, f);
  grid->add_option("--workers", f.workers, "Worker threads");

  auto* energy = app.add_subcommand("energy", "MAC counts for an architecture file");
  energy->add_option("--spec", f.spec, "JSON list of layer descriptors")->required();
  energy->add_option("--out-dir", f.out_dir, "Output directory");
  energy->add_option("--joules-per-mac", f.joules_per_mac, "Optional energy per MAC");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) {
      std::cout << vspiker::cmd_train(resolve_config(f)).dump(2) << "\n";
    } else if (detect->parsed()) {
      std::cout << vspiker::cmd_detect(resolve_config(f), f.checkpoint).dump(2) << "\n";
    } else if (evaluate->parsed()) {
      std::optional<std::filesystem::path> det, ck;
      if (!f.detection.empty()) det = f.detection;
      if (!f.checkpoint.empty()) ck = f.checkpoint;
      std::cout << vspiker::cmd_evaluate(resolve_config(f), det, ck).dump(2) << "\n";
    } else if (grid->parsed()) {
      std::cout << vspiker::cmd_grid_search(resolve_config(f));
    } else if (energy->parsed()) {
      std::cout << vspiker::cmd_energy(f.spec, f.out_dir.value_or("."), f.joules_per_mac).dump(2) << "\n";
    }
  } catch (const vspiker::Error& e) {
    std::cerr << "error [" << vspiker::to_string(e.code()) << "]: " << e.what() << "\n";
    return vspiker::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
