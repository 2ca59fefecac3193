// Command-line front end for the experiment harness.

#include "soco/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::string config_path;
  std::string algo, instance, which, out, m_grid;
  double m = 0, gamma = 0, mu = 0, lambda1 = 0, lambda2 = 0, mprime = 0, L = 0;
  int n = 0, T = 0;
  std::uint64_t seed = 0;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw soco::ConfigError("config.m_grid: cannot parse '" + item + "'");
    }
  }
  return grid;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--m", f.m, "curvature parameter m");
  cmd->add_option("--gamma", f.gamma, "OBD balance parameter");
  cmd->add_option("--mu", f.mu, "G-OBD step weight");
  cmd->add_option("--lambda1", f.lambda1, "R-OBD weight on the previous point");
  cmd->add_option("--lambda2", f.lambda2, "R-OBD weight on the minimizer");
  cmd->add_option("--mprime", f.mprime, "steep final-round curvature");
  cmd->add_option("--n", f.n, "flat rounds of the ramp instance");
  cmd->add_option("--T", f.T, "rounds");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output stem; writes <stem>.csv and <stem>.json");
}

// Applies every flag given on the command line on top of the config file.
soco::ExperimentConfig merge(const CLI::App& cmd, const std::string& name, const Flags& f) {
  soco::ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw soco::ConfigError("config: cannot open " + f.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw soco::ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    cfg = soco::ExperimentConfig::from_json(j);
  }
  cfg.command = name;
  auto given = [&cmd](const char* flag) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--algo")) cfg.algo = f.algo;
  if (given("--instance")) cfg.instance = f.instance;
  if (given("--which")) cfg.which = f.which;
  if (given("--m")) cfg.m = f.m;
  if (given("--gamma")) cfg.gamma = f.gamma;
  if (given("--mu")) cfg.mu = f.mu;
  if (given("--lambda1")) cfg.lambda1 = f.lambda1;
  if (given("--lambda2")) cfg.lambda2 = f.lambda2;
  if (given("--mprime")) cfg.mprime = f.mprime;
  if (given("--n")) cfg.n = f.n;
  if (given("--T")) cfg.T = f.T;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--L")) cfg.L = f.L;
  if (given("--out")) cfg.out = f.out;
  if (given("--m-grid")) cfg.m_grid = parse_grid(f.m_grid);
  return cfg;
}

void print_summary(const soco::ExperimentReport& rep) {
  nlohmann::json j = rep.to_json();
  j.erase("config");
  std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothed online convex optimization experiments"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config_path, "JSON file with default values; flags override it");

  auto* run = app.add_subcommand("run", "run one algorithm on one instance");
  add_common(run, f);
  run->add_option("--algo", f.algo, "obd | gobd | robd | stay | follow");
  run->add_option("--instance", f.instance, "ramp | drift | single | fixedpoint | circle | random-quadratic");

  auto* sweep = app.add_subcommand("sweep", "ratio over a grid of m and the log-log slope");
  add_common(sweep, f);
  sweep->add_option("--algo", f.algo, "obd | gobd | robd | stay | follow");
  sweep->add_option("--instance", f.instance, "instance family");
  sweep->add_option("--m-grid", f.m_grid, "comma-separated m values");

  auto* lower = app.add_subcommand("lowerbound", "lower-bound constructions");
  add_common(lower, f);
  lower->add_option("--which", f.which, "theorem1 | theorem2 | theorem5");

  auto* regret = app.add_subcommand("regret", "L-constrained regret of R-OBD");
  add_common(regret, f);
  regret->add_option("--L", f.L, "movement budget (default sqrt(T))");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* cmd : {run, sweep, lower, regret}) {
      if (cmd->parsed()) {
        const soco::ExperimentReport rep = soco::run_experiment(merge(*cmd, cmd->get_name(), f));
        print_summary(rep);
      }
    }
  } catch (const soco::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
