#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sanc/experiment.hpp"
#include "sanc/sampling.hpp"

namespace {

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    seeds.push_back(std::stoull(tok));
  }
  if (seeds.empty()) throw sanc::ConfigError("--seed-list: no seeds given");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SANC benchmark harness: adaptive cubic regularization with "
               "negative-curvature fallback, plus SCR/CR/NCD/SGD baselines"};
  app.require_subcommand(1);

  // run <config> [--seed-list a,b,c] [--budget N] [--out DIR]
  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path, seed_list, out_dir;
  long budget = -1;
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  run_cmd->add_option("--seed-list", seed_list, "Comma-separated seeds (overrides config)");
  run_cmd->add_option("--budget", budget, "Oracle-call budget (overrides config)");
  run_cmd->add_option("--out", out_dir, "Output directory (overrides config)");

  // bounds --L0 --L1 --delta --eps-g --eps-B --dim
  auto* bounds_cmd = app.add_subcommand("bounds", "Print the sampling-size lower bounds");
  sanc::SamplingConstants sc;
  std::size_t dim = 1;
  bounds_cmd->add_option("--L0", sc.L0, "Lipschitz constant of f_i")->required();
  bounds_cmd->add_option("--L1", sc.L1, "Lipschitz constant of grad f_i")->required();
  bounds_cmd->add_option("--delta", sc.delta, "Failure probability in (0,1)")->required();
  bounds_cmd->add_option("--eps-g", sc.eps_g, "Gradient approximation target")->required();
  bounds_cmd->add_option("--eps-B", sc.eps_B, "Hessian approximation target")->required();
  bounds_cmd->add_option("--dim", dim, "Parameter dimension d")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      sanc::ExperimentConfig cfg;
      try {
        cfg = sanc::load_config_file(config_path);
        if (!seed_list.empty()) cfg.seeds = parse_seed_list(seed_list);
        if (budget >= 0) cfg.budget = budget;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
      } catch (const sanc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
      for (const std::string& w : sanc::config_warnings(cfg.base))
        std::cerr << "warning: " << w << "\n";
      const sanc::ExperimentResult result = sanc::run_experiment(cfg);
      for (const auto& r : result.runs)
        std::cout << sanc::to_string(r.optimizer) << " seed=" << r.seed
                  << " final_loss=" << r.final_loss << " iters=" << r.iterations
                  << " oracle_calls=" << r.oracle_calls
                  << " unsuccessful=" << r.unsuccessful_iterations << "\n";
      std::cout << "summary: " << result.summary_file.string() << "\n";
    } else if (bounds_cmd->parsed()) {
      try {
        std::cout << "|S_g| >= " << sanc::gradient_batch_size(sc) << "\n";
        std::cout << "|S_B| >= " << sanc::hessian_batch_size(sc, dim) << "\n";
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
