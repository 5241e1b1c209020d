// scuq: run the stochastic-collocation benchmark experiments from JSON
// configs. Subcommands: run, validate, list-experiments.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scuq/experiments.hpp"

namespace {

using nlohmann::json;

scuq::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path + ": " + e.what());
  }

  scuq::ExperimentConfig cfg;
  cfg.experiment = j.at("experiment").get<std::string>();
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : j.at("methods"))
      cfg.methods.push_back(scuq::parse_method(m.get<std::string>()));
  }
  cfg.n_values = j.at("N").get<std::vector<std::size_t>>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
  if (j.contains("field_samples"))
    cfg.field_samples = j.at("field_samples").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
  if (j.contains("branch_threshold"))
    cfg.branch_threshold = j.at("branch_threshold").get<double>();
  if (j.contains("bin_convention")) {
    const auto s = j.at("bin_convention").get<std::string>();
    if (s == "extended")
      cfg.bins = scuq::BinWidthConvention::Extended;
    else if (s == "native")
      cfg.bins = scuq::BinWidthConvention::Native;
    else
      throw std::runtime_error("bin_convention: expected 'extended' or 'native', got '" + s +
                               "'");
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    if (s.contains("dx")) cfg.solver.dx = s.at("dx").get<double>();
    if (s.contains("cfl")) cfg.solver.cfl = s.at("cfl").get<double>();
    if (s.contains("T")) cfg.solver.t_final = s.at("T").get<double>();
    if (s.contains("gamma")) cfg.solver.gamma = s.at("gamma").get<double>();
    if (s.contains("g")) cfg.solver.g = s.at("g").get<double>();
  }
  if (j.contains("cweno")) {
    const auto& c = j.at("cweno");
    if (c.contains("central_linear_weight"))
      cfg.surrogate.cweno.central_linear_weight = c.at("central_linear_weight").get<double>();
    if (c.contains("epsilon")) cfg.surrogate.cweno.epsilon = c.at("epsilon").get<double>();
  }
  return cfg;
}

void apply_env_threads(scuq::ExperimentConfig& cfg) {
  if (cfg.threads > 0) return;
  if (const char* env = std::getenv("SCUQ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cfg.threads = static_cast<unsigned>(v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic collocation UQ benchmarks"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  std::uint64_t seed_override = 0;
  std::size_t samples_override = 0;
  unsigned threads_override = 0;
  bool have_seed = false;

  auto* run_cmd = app.add_subcommand("run", "run an experiment config end to end");
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  run_cmd->add_option("--out", out_override, "output directory override");
  run_cmd->add_option("--seed", seed_override, "RNG seed override")
      ->each([&](const std::string&) { have_seed = true; });
  run_cmd->add_option("--samples", samples_override, "sample count override");
  run_cmd->add_option("--threads", threads_override,
                      "worker thread count (also: SCUQ_THREADS env, 0 = auto)");

  auto* validate_cmd = app.add_subcommand("validate", "check a config without running it");
  validate_cmd->add_option("config", config_path, "JSON config file")->required();

  app.add_subcommand("list-experiments", "print the known experiment ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-experiments")) {
      for (const auto& id : scuq::experiment_ids()) std::cout << id << '\n';
      return 0;
    }

    auto cfg = load_config(config_path);

    if (app.got_subcommand("validate")) {
      const auto violations = scuq::validate(cfg);
      if (violations.empty()) {
        std::cout << "ok: " << config_path << '\n';
        return 0;
      }
      for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
      return 1;
    }

    if (!out_override.empty()) cfg.out_dir = out_override;
    if (have_seed) cfg.seed = seed_override;
    if (samples_override > 0) {
      cfg.samples = samples_override;
      cfg.field_samples = samples_override;
    }
    if (threads_override > 0) cfg.threads = threads_override;
    apply_env_threads(cfg);

    const auto manifest = scuq::run(cfg);
    std::cout << "wrote " << manifest.files.size() << " files to " << manifest.out_dir << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
