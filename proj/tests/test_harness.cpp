#include "doctest.h"

#include "soco/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace soco;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "soco_harness_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string config_error(const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("slope fit on an exact power law") {
  const std::vector<double> m{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  std::vector<double> r;
  for (double x : m) r.push_back(std::pow(x, -0.5));
  const SlopeFit fit = fit_loglog_slope(m, r);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.points_used == 5);
  CHECK(fit.warnings.empty());
}

TEST_CASE("slope fit drops unusable points") {
  const std::vector<double> m{1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
  std::vector<double> r;
  for (double x : m) r.push_back(2.0 * std::pow(x, -0.25));
  r[1] = std::numeric_limits<double>::infinity();
  r[5] = 1.01;  // pre-asymptotic point at the largest m
  const SlopeFit fit = fit_loglog_slope(m, r);
  CHECK(fit.points_used == 4);
  CHECK(fit.slope == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(fit.warnings.size() == 2);
  CHECK_THROWS_AS(fit_loglog_slope({1e-3, 1e-2, 1e-1}, {3.0, 2.0, 1.5}), std::invalid_argument);
}

TEST_CASE("sweep_slope evaluates every grid point") {
  std::vector<double> ratios;
  const SlopeFit fit = sweep_slope({0.01, 0.02, 0.04, 0.08}, [](double m) { return 3.0 / m; }, &ratios);
  CHECK(ratios.size() == 4);
  CHECK(ratios[2] == doctest::Approx(75.0));
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("competitive ratio") {
  const Ratio same = competitive_ratio(2.5, 2.5);
  CHECK(same.value == 1.0);
  CHECK(same.basis == kBasisOpt);
  const Ratio zero = competitive_ratio(1.0, 0.0);
  CHECK(zero.unbounded);
  CHECK(std::isinf(zero.value));
  const nlohmann::json j = ratio_to_json(zero);
  CHECK(j["value"].is_null());
  CHECK(j["unbounded"] == true);
}

TEST_CASE("ratio on the fixed-point instance") {
  const Instance inst = gen_fixed_point(0.1, 100);
  const RunResult r = run(AlgoConfig{Robd{0.5, 0.0}, {}}, inst);
  const Ratio q = measure_ratio(r, inst, {});
  CHECK(q.basis == kBasisComparator);
  CHECK(q.value == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("ratio on the ramp stays under the bound") {
  SolveSettings s;
  const double m = 0.25;
  const auto [l1, l2] = robd_optimal_params(m, 1.0, 1.0);
  const Instance inst = gen_ramp(m, 1e6, 200);
  const Ratio q = measure_ratio(run(AlgoConfig{Robd{l1, l2}, s}, inst), inst, s);
  CHECK(q.basis == kBasisOpt);
  CHECK(q.value <= 0.5 * (1.0 + std::sqrt(17.0)) * (1 + 1e-6));
  CHECK(q.value > 2.0);
}

TEST_CASE("adaptive runs are measured against the comparator") {
  const Instance inst = circle_adversary(0.04, 1.0, 1e-3, 1.0, 20);
  const RunResult r = run(AlgoConfig{Obd{1.0}, {}}, inst);
  const Ratio q = measure_ratio(r, inst, {});
  CHECK(q.basis == kBasisComparator);
  CHECK(circle_steady_ratio(r) > q.value);
}

TEST_CASE("movement-budgeted regret") {
  SolveSettings s;
  const Instance inst = gen_regret_stream(1.0, 30, 2.0, 1.0, 1);
  const RunResult stay = run(AlgoConfig{StayPut{}, s}, inst);
  CHECK(std::abs(l_regret(stay, inst, 0.0, s)) <= 1e-12);

  const RunResult robd = run(AlgoConfig{Robd{0.8, 0.0}, s}, inst);
  const OfflineResult opt = offline_optimal(inst, s);
  CHECK(l_regret(robd, inst, 10.0 * opt.movement_total, s) == doctest::Approx(robd.total - opt.total).epsilon(1e-9));
}

TEST_CASE("config validation names the field") {
  ExperimentConfig cfg;
  CHECK(config_error(cfg).empty());
  cfg.m = -1.0;
  CHECK(config_error(cfg).rfind("config.m:", 0) == 0);
  cfg = ExperimentConfig{};
  cfg.algo = "sgd";
  CHECK(config_error(cfg).rfind("config.algo:", 0) == 0);
  cfg = ExperimentConfig{};
  cfg.lambda1 = 1.5;
  CHECK(config_error(cfg).rfind("config.lambda1:", 0) == 0);
  cfg = ExperimentConfig{};
  cfg.command = "sweep";
  cfg.m_grid = {0.1, 0.2};
  CHECK(config_error(cfg).rfind("config.m_grid:", 0) == 0);
  cfg = ExperimentConfig{};
  cfg.command = "lowerbound";
  cfg.which = "theorem9";
  CHECK(config_error(cfg).rfind("config.which:", 0) == 0);
  cfg = ExperimentConfig{};
  cfg.solve.grad_tol = -1.0;
  CHECK(config_error(cfg).rfind("config.solve:", 0) == 0);
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg;
  cfg.command = "sweep";
  cfg.algo = "obd";
  cfg.gamma = 2.0;
  cfg.m_grid = {0.1, 0.2, 0.3, 0.4};
  cfg.seed = 17;
  cfg.solve.bisect_tol = 1e-11;
  const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
  CHECK(*back.gamma == 2.0);
  CHECK_FALSE(back.mu.has_value());

  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"m", "small"}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"solve", {{"tol", 1}}}}), ConfigError);
  CHECK(ExperimentConfig::from_json(nlohmann::json{{"m-grid", {1, 2, 3, 4}}}).m_grid.size() == 4);
}

TEST_CASE("minimal run experiment") {
  ExperimentConfig cfg;
  const ExperimentReport rep = run_experiment(cfg);
  REQUIRE(rep.ratio.has_value());
  CHECK(rep.ratio->value <= 0.5 * (1.0 + std::sqrt(17.0)) * (1 + 1e-6));
  const nlohmann::json j = rep.to_json();
  for (const char* key : {"config", "totals", "ratio", "regret", "slope", "runtime_sec"}) CHECK(j.contains(key));
}

TEST_CASE("exported steps reproduce the totals") {
  ExperimentConfig cfg;
  cfg.algo = "obd";
  cfg.instance = "random-quadratic";
  cfg.m = 0.2;
  cfg.T = 40;
  cfg.seed = 5;
  cfg.out = (scratch_dir() / "steps").string();
  const ExperimentReport rep = run_experiment(cfg);
  const auto rows = parse_csv(read_file(cfg.out + ".csv"));
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "hit", "move", "cum_alg", "cum_oracle"});
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    total += std::stod(rows[i][2]) + std::stod(rows[i][3]);
    CHECK(std::count(rows[i][1].begin(), rows[i][1].end(), ';') == 1);
  }
  CHECK(std::abs(total - rep.totals["alg_total"].get<double>()) <= 1e-9);
  CHECK(std::abs(std::stod(rows.back()[5]) - rep.totals["oracle_total"].get<double>()) <= 1e-9);
  const auto j = nlohmann::json::parse(read_file(cfg.out + ".json"));
  CHECK(j["totals"]["alg_total"] == rep.totals["alg_total"]);
  const std::string text = read_file(cfg.out + ".csv");
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("sweep experiment shape and determinism") {
  ExperimentConfig cfg;
  cfg.command = "sweep";
  cfg.algo = "robd";
  cfg.instance = "random-quadratic";
  cfg.T = 30;
  cfg.seed = 3;
  cfg.m_grid = {0.01, 0.03, 0.1, 0.3, 1.0};
  cfg.out = (scratch_dir() / "sweep_a").string();
  const ExperimentReport rep = run_experiment(cfg);
  const auto rows = parse_csv(read_file(cfg.out + ".csv"));
  CHECK(rows.size() == 6);
  CHECK(rep.slope.has_value());
  const auto j = nlohmann::json::parse(read_file(cfg.out + ".json"));
  CHECK(j["slope"]["slope"].is_number());

  ExperimentConfig again = cfg;
  again.out = (scratch_dir() / "sweep_b").string();
  run_experiment(again);
  CHECK(read_file(cfg.out + ".csv") == read_file(again.out + ".csv"));
}

TEST_CASE("lower-bound and regret commands") {
  ExperimentConfig cfg;
  cfg.command = "lowerbound";
  cfg.which = "theorem1";
  cfg.m = 0.05;
  cfg.n = 100;
  const ExperimentReport t1 = run_experiment(cfg);
  CHECK(t1.details["ratio_over_bound"].get<double>() > 0.9);

  cfg.which = "theorem5";
  cfg.m = 0.1;
  cfg.T = 50;
  const ExperimentReport t5 = run_experiment(cfg);
  CHECK(t5.ratio->value >= 0.9 * 50 * 0.05 / 0.5);

  ExperimentConfig reg;
  reg.command = "regret";
  reg.T = 64;
  reg.m = 1.0;
  const ExperimentReport r = run_experiment(reg);
  REQUIRE(r.regret.has_value());
  CHECK(std::isfinite(*r.regret));
}

TEST_CASE("reals are printed with 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}
