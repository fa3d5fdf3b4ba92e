#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavisac/exp/compare.hpp"
#include "uavisac/exp/config.hpp"
#include "uavisac/exp/runner.hpp"

namespace {

int cmd_run(const std::string& config_path,
            const std::optional<std::string>& algo,
            const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& backend,
            const std::optional<std::string>& out_dir) {
  uavisac::exp::RunConfig cfg = uavisac::exp::load_config(config_path);
  if (algo) cfg.algo = uavisac::exp::algo_from_name(*algo);
  if (seed) cfg.params.seed = *seed;
  if (backend) cfg.backend = uavisac::exp::backend_from_name(*backend);
  if (out_dir) cfg.out_dir = *out_dir;
  // Overrides can switch to the http backend after parse-time validation.
  uavisac::exp::require_backend_key(cfg);
  uavisac::exp::run_experiment(cfg);
  return 0;
}

int cmd_compare(const std::vector<std::string>& dirs,
                const std::string& out_dir) {
  std::vector<std::filesystem::path> paths(dirs.begin(), dirs.end());
  uavisac::exp::compare_runs(paths, out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bi-objective optimizer testbed for joint UAV placement and "
      "communication/sensing power split"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> algo, backend, run_out;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Execute one optimization run");
  run->add_option("--config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--algo", algo,
                  "Override algorithm: ledma, moead-ga, moead-de, random");
  run->add_option("--seed", seed, "Override optimizer seed");
  run->add_option("--backend", backend, "Override LLM backend: mock, http");
  run->add_option("--out", run_out, "Override output root directory");

  std::vector<std::string> dirs;
  std::string cmp_out;
  auto* cmp = app.add_subcommand(
      "compare", "Score existing run directories on a shared normalization");
  cmp->add_option("dirs", dirs, "Run directories to compare")
      ->required()
      ->expected(-2);
  cmp->add_option("--out", cmp_out, "Directory for the comparison files")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, algo, seed, backend, run_out);
    if (cmp->parsed()) return cmd_compare(dirs, cmp_out);
  } catch (const uavisac::exp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
