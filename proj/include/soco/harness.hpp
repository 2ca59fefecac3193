#pragma once

// Metrics, sweeps, slope fits and experiment export.

#include "soco/adversaries.hpp"
#include "soco/algorithms.hpp"
#include "soco/offline.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soco {

inline constexpr const char* kBasisOpt = "vs OPT";
inline constexpr const char* kBasisComparator = "vs comparator";

/// Regret streams: sinusoidal minimizer drift of this amplitude plus uniform noise.
inline constexpr double kRegretStreamAmplitude = 2.0;
inline constexpr double kRegretStreamNoise = 1.0;

struct Ratio {
  double value = 0.0;
  /// Set when the oracle total is zero; value is then +infinity.
  bool unbounded = false;
  std::string basis = kBasisOpt;
  double alg_total = 0.0;
  double oracle_total = 0.0;
};

Ratio competitive_ratio(double alg_total, double oracle_total, std::string basis = kBasisOpt);
Ratio competitive_ratio(const RunResult& alg, const OfflineResult& oracle);
/// Ratio against the comparator trajectory carried by the run.
Ratio competitive_ratio_vs_comparator(const RunResult& alg);

/// Ratio against offline_optimal when the instance admits it (fixed, squared-l2,
/// convex costs), otherwise against the instance's comparator.
Ratio measure_ratio(const RunResult& alg, const Instance& inst, const SolveSettings& s);

/// alg.total - l_constrained_optimal(inst, L).total, reported as-is.
double l_regret(const RunResult& alg, const Instance& inst, double L, const SolveSettings& s);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
  std::vector<std::string> warnings;
};

/// Ordinary least squares of log(ratio) on log(m). Non-finite or nonpositive
/// ratios are dropped with a warning; the largest m is dropped when its ratio is
/// below 1.05. Requires at least 4 remaining points.
SlopeFit fit_loglog_slope(const std::vector<double>& m, const std::vector<double>& ratio);

/// Evaluates ratio_at on each grid point (concurrently) and fits the slope.
SlopeFit sweep_slope(const std::vector<double>& m_grid, const std::function<double(double)>& ratio_at,
                     std::vector<double>* ratios = nullptr);

/// OBD cost over OBD-plus-comparator cost on an adaptive run, excluding round 1.
double circle_steady_ratio(const RunResult& run);

/// Worst ratio of R-OBD with optimal parameters over the ramp family and
/// `random_streams` seeded 2-d random quadratic streams.
double robd_worst_ratio(double m, const SolveSettings& s, int random_streams = 4);

struct ObdBestGamma {
  double gamma = 0.0;
  double ratio = 0.0;
  double circle_ratio = 0.0;
  double drift_ratio = 0.0;
};

/// Minimizes over gamma = c m^{-1/3}, c in c_grid, the worse of the circle
/// steady-state ratio and the drift ratio against OPT.
ObdBestGamma obd_best_gamma(double m, const std::vector<double>& c_grid, int circle_rounds,
                            const SolveSettings& s);

/// Default multipliers c for obd_best_gamma.
std::vector<double> default_gamma_grid();

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command = "run";  // run | sweep | lowerbound | regret
  std::string algo = "robd";
  std::string instance = "ramp";
  double m = 0.25;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  double mprime = 1e6;
  int n = 200;
  int T = 100;
  std::uint64_t seed = 0;
  std::vector<double> m_grid;
  std::string which = "theorem1";
  std::optional<double> L;
  std::string out;
  SolveSettings solve;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;
  /// Reads keys mirroring the CLI flags; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct SweepRow {
  double m = 0.0;
  Ratio ratio;
};

struct ExperimentReport {
  nlohmann::json config;
  nlohmann::json totals = nlohmann::json::object();
  std::optional<Ratio> ratio;
  std::optional<double> regret;
  std::optional<SlopeFit> slope;
  double runtime_sec = 0.0;
  nlohmann::json details = nlohmann::json::object();

  /// Per-step data of the primary run (run, lowerbound, regret).
  std::optional<RunResult> run;
  std::vector<double> oracle_step;
  /// One row per grid point (sweep).
  std::vector<SweepRow> rows;

  nlohmann::json to_json() const;
};

nlohmann::json ratio_to_json(const Ratio& r);

/// Builds the instance and algorithm named by the config.
Instance make_instance(const ExperimentConfig& cfg, double m);
AlgoConfig make_algorithm(const ExperimentConfig& cfg, double m);

/// Executes the configured command. When cfg.out is non-empty, writes
/// <out>.csv and <out>.json.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Reals printed with 17 significant digits.
std::string format_real(double x);

/// Header t,x,hit,move,cum_alg,cum_oracle followed by one row per round.
std::string steps_csv(const RunResult& run, const std::vector<double>& oracle_step);
/// Header m,alg_total,oracle_total,ratio followed by one row per grid point.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace soco
