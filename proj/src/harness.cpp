#include "soco/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace soco {

namespace {

using nlohmann::json;

bool admits_offline(const Instance& inst) {
  if (inst.is_adaptive() || !inst.movement.is_squared_l2()) return false;
  for (const auto& f : inst.costs) {
    if (f.kind() != CostKind::StronglyConvex) return false;
  }
  return true;
}

std::vector<double> per_step(const std::vector<HittingCost>& costs, const MovementCost& movement,
                             const std::vector<Point>& trajectory) {
  std::vector<double> out;
  for (std::size_t t = 1; t < trajectory.size(); ++t) {
    out.push_back(costs[t - 1](trajectory[t]) + movement(trajectory[t], trajectory[t - 1]));
  }
  return out;
}

void require_completed(const RunResult& r) {
  if (!r.completed) throw std::runtime_error(r.algorithm + " on " + r.family + " failed: " + r.failure);
}

// Runs the algorithm and measures its ratio; also returns per-step oracle costs.
struct Measured {
  RunResult run;
  Ratio ratio;
  std::vector<double> oracle_step;
};

Measured measure(const AlgoConfig& algo, const Instance& inst) {
  Measured out;
  out.run = run(algo, inst);
  require_completed(out.run);
  if (admits_offline(inst)) {
    const OfflineResult opt = offline_optimal(inst, algo.solve);
    out.ratio = competitive_ratio(out.run, opt);
    out.oracle_step = per_step(inst.costs, inst.movement, opt.trajectory);
  } else {
    out.ratio = competitive_ratio_vs_comparator(out.run);
    for (std::size_t t = 0; t < out.run.comparator_hit.size(); ++t) {
      out.oracle_step.push_back(out.run.comparator_hit[t] + out.run.comparator_move[t]);
    }
  }
  return out;
}

json slope_to_json(const SlopeFit& fit) {
  return json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"points_used", fit.points_used},
              {"warnings", fit.warnings}};
}

json run_totals(const RunResult& r, const Ratio& ratio) {
  return json{{"algorithm", r.algorithm},
              {"family", r.family},
              {"rounds", r.rounds()},
              {"alg_total", r.total},
              {"alg_hit", r.hit_total()},
              {"alg_move", r.move_total()},
              {"oracle_total", ratio.oracle_total},
              {"oracle_basis", ratio.basis}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace

Ratio competitive_ratio(double alg_total, double oracle_total, std::string basis) {
  if (!std::isfinite(alg_total) || !std::isfinite(oracle_total)) {
    throw std::invalid_argument("competitive_ratio: non-finite total");
  }
  if (oracle_total < 0.0) throw std::invalid_argument("competitive_ratio: negative oracle total");
  Ratio r;
  r.basis = std::move(basis);
  r.alg_total = alg_total;
  r.oracle_total = oracle_total;
  if (oracle_total == 0.0) {
    r.unbounded = true;
    r.value = std::numeric_limits<double>::infinity();
  } else {
    r.value = alg_total / oracle_total;
  }
  return r;
}

Ratio competitive_ratio(const RunResult& alg, const OfflineResult& oracle) {
  return competitive_ratio(alg.total, oracle.total, kBasisOpt);
}

Ratio competitive_ratio_vs_comparator(const RunResult& alg) {
  if (!alg.has_comparator()) throw std::invalid_argument("competitive_ratio: run carries no comparator");
  return competitive_ratio(alg.total, alg.comparator_total, kBasisComparator);
}

Ratio measure_ratio(const RunResult& alg, const Instance& inst, const SolveSettings& s) {
  if (admits_offline(inst)) return competitive_ratio(alg, offline_optimal(inst, s));
  return competitive_ratio_vs_comparator(alg);
}

double l_regret(const RunResult& alg, const Instance& inst, double L, const SolveSettings& s) {
  require_completed(alg);
  return alg.total - l_constrained_optimal(inst, L, s).total;
}

SlopeFit fit_loglog_slope(const std::vector<double>& m, const std::vector<double>& ratio) {
  if (m.size() != ratio.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
  SlopeFit fit;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m[i] > 0.0) || !std::isfinite(m[i]) || !std::isfinite(ratio[i]) || !(ratio[i] > 0.0)) {
      fit.warnings.push_back("dropped non-finite point at m=" + format_real(m[i]));
      continue;
    }
    pts.emplace_back(m[i], ratio[i]);
  }
  if (!pts.empty()) {
    auto largest = std::max_element(pts.begin(), pts.end());
    if (largest->second < 1.05) {
      fit.warnings.push_back("dropped pre-asymptotic point at m=" + format_real(largest->first));
      pts.erase(largest);
    }
  }
  if (pts.size() < 4) throw std::invalid_argument("fit_loglog_slope: fewer than 4 usable points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw std::invalid_argument("fit_loglog_slope: degenerate m grid");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

SlopeFit sweep_slope(const std::vector<double>& m_grid, const std::function<double(double)>& ratio_at,
                     std::vector<double>* ratios) {
  std::vector<std::future<double>> jobs;
  jobs.reserve(m_grid.size());
  for (double m : m_grid) jobs.push_back(std::async(std::launch::async, ratio_at, m));
  std::vector<double> values;
  for (auto& job : jobs) values.push_back(job.get());
  if (ratios != nullptr) *ratios = values;
  SlopeFit fit = fit_loglog_slope(m_grid, values);
  for (const auto& w : fit.warnings) std::cerr << "warning: " << w << "\n";
  return fit;
}

double circle_steady_ratio(const RunResult& run) {
  require_completed(run);
  if (!run.has_comparator() || run.rounds() < 2) {
    throw std::invalid_argument("circle_steady_ratio: needs a comparator and at least 2 rounds");
  }
  double alg = 0.0, cmp = 0.0;
  for (int t = 1; t < run.rounds(); ++t) {
    alg += run.hit[t] + run.move[t];
    cmp += run.comparator_hit[t] + run.comparator_move[t];
  }
  return competitive_ratio(alg, cmp, kBasisComparator).value;
}

double robd_worst_ratio(double m, const SolveSettings& s, int random_streams) {
  const auto [l1, l2] = robd_optimal_params(m, 1.0, 1.0);
  const AlgoConfig algo{Robd{l1, l2}, s};
  const Instance ramp = gen_ramp(m, 1e6, 200);
  double worst = measure_ratio(run(algo, ramp), ramp, s).value;
  for (int k = 0; k < random_streams; ++k) {
    const Instance inst = gen_random_quadratic(m, 2, 100, 1000 + static_cast<std::uint64_t>(k));
    worst = std::max(worst, measure_ratio(run(algo, inst), inst, s).value);
  }
  return worst;
}

std::vector<double> default_gamma_grid() {
  // Geometric grid c = 2^(k/20) on [1/4, 64].
  std::vector<double> grid;
  for (int k = -40; k <= 120; ++k) grid.push_back(std::pow(2.0, k / 20.0));
  return grid;
}

ObdBestGamma obd_best_gamma(double m, const std::vector<double>& c_grid, int circle_rounds,
                            const SolveSettings& s) {
  if (c_grid.empty()) throw std::invalid_argument("obd_best_gamma: empty grid");
  ObdBestGamma best;
  best.ratio = std::numeric_limits<double>::infinity();
  for (double c : c_grid) {
    const double gamma = c * std::cbrt(1.0 / m);
    if (!(gamma * m < 1.0)) continue;
    const AlgoConfig algo{Obd{gamma}, s};
    const Instance circle = circle_adversary(m, gamma, 1e-3, 1.0, circle_rounds);
    const double circle_ratio = circle_steady_ratio(run(algo, circle));
    const Instance drift = gen_drift(m, gamma, 1e6);
    const double drift_ratio = measure_ratio(run(algo, drift), drift, s).value;
    const double worst = std::max(circle_ratio, drift_ratio);
    if (worst < best.ratio) best = {gamma, worst, circle_ratio, drift_ratio};
  }
  if (!std::isfinite(best.ratio)) throw std::invalid_argument("obd_best_gamma: no admissible gamma");
  return best;
}

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError("config." + field + ": " + msg);
  };
  static const std::set<std::string> commands{"run", "sweep", "lowerbound", "regret"};
  static const std::set<std::string> algos{"obd", "gobd", "robd", "stay", "follow"};
  static const std::set<std::string> instances{"ramp", "drift", "single", "fixedpoint", "circle", "random-quadratic"};
  static const std::set<std::string> theorems{"theorem1", "theorem2", "theorem5"};
  if (!commands.count(command)) fail("command", "must be one of run, sweep, lowerbound, regret");
  if (!algos.count(algo)) fail("algo", "must be one of obd, gobd, robd, stay, follow");
  if (!instances.count(instance)) {
    fail("instance", "must be one of ramp, drift, single, fixedpoint, circle, random-quadratic");
  }
  if (!(m > 0.0) || !std::isfinite(m)) fail("m", "must be a finite real > 0");
  if (gamma && !(*gamma > 0.0)) fail("gamma", "must be > 0");
  if (mu && !(*mu > 0.0)) fail("mu", "must be > 0");
  if (lambda1 && !(*lambda1 > 0.0 && *lambda1 <= 1.0)) fail("lambda1", "must lie in (0, 1]");
  if (lambda2 && !(*lambda2 >= 0.0)) fail("lambda2", "must be >= 0");
  if (!(mprime > 0.0)) fail("mprime", "must be > 0");
  if (n < 1) fail("n", "must be >= 1");
  if (T < 1) fail("T", "must be >= 1");
  if (L && !(*L >= 0.0)) fail("L", "must be >= 0");
  if (command == "sweep") {
    if (m_grid.size() < 4) fail("m_grid", "needs at least 4 values");
    for (double v : m_grid) {
      if (!(v > 0.0) || !std::isfinite(v)) fail("m_grid", "values must be finite reals > 0");
    }
  }
  if (command == "lowerbound" && !theorems.count(which)) fail("which", "must be one of theorem1, theorem2, theorem5");
  if (command == "lowerbound" && which == "theorem5" && !(m < 1.0)) fail("m", "theorem5 needs m < 1");
  try {
    solve.validate();
  } catch (const std::invalid_argument& e) {
    fail("solve", e.what());
  }
}

json ExperimentConfig::to_json() const {
  json j{{"command", command}, {"algo", algo}, {"instance", instance}, {"m", m},
         {"mprime", mprime},   {"n", n},       {"T", T},               {"seed", seed},
         {"which", which},     {"out", out}};
  if (gamma) j["gamma"] = *gamma;
  if (mu) j["mu"] = *mu;
  if (lambda1) j["lambda1"] = *lambda1;
  if (lambda2) j["lambda2"] = *lambda2;
  if (L) j["L"] = *L;
  if (!m_grid.empty()) j["m_grid"] = m_grid;
  j["solve"] = json{{"grad_tol", solve.grad_tol},
                    {"max_iters", solve.max_iters},
                    {"bisect_tol", solve.bisect_tol},
                    {"shrink", solve.backtrack.shrink},
                    {"armijo", solve.backtrack.armijo}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") cfg.command = value.get<std::string>();
      else if (key == "algo") cfg.algo = value.get<std::string>();
      else if (key == "instance") cfg.instance = value.get<std::string>();
      else if (key == "m") cfg.m = value.get<double>();
      else if (key == "gamma") cfg.gamma = value.get<double>();
      else if (key == "mu") cfg.mu = value.get<double>();
      else if (key == "lambda1") cfg.lambda1 = value.get<double>();
      else if (key == "lambda2") cfg.lambda2 = value.get<double>();
      else if (key == "mprime") cfg.mprime = value.get<double>();
      else if (key == "n") cfg.n = value.get<int>();
      else if (key == "T") cfg.T = value.get<int>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "which") cfg.which = value.get<std::string>();
      else if (key == "L") cfg.L = value.get<double>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "m_grid" || key == "m-grid") cfg.m_grid = value.get<std::vector<double>>();
      else if (key == "solve") {
        for (const auto& [skey, sval] : value.items()) {
          if (skey == "grad_tol") cfg.solve.grad_tol = sval.get<double>();
          else if (skey == "max_iters") cfg.solve.max_iters = sval.get<int>();
          else if (skey == "bisect_tol") cfg.solve.bisect_tol = sval.get<double>();
          else if (skey == "shrink") cfg.solve.backtrack.shrink = sval.get<double>();
          else if (skey == "armijo") cfg.solve.backtrack.armijo = sval.get<double>();
          else throw ConfigError("config.solve." + skey + ": unknown key");
        }
      } else {
        throw ConfigError("config." + key + ": unknown key");
      }
    } catch (const json::exception& e) {
      throw ConfigError("config." + key + ": wrong type (" + e.what() + ")");
    }
  }
  return cfg;
}

json ratio_to_json(const Ratio& r) {
  json j{{"unbounded", r.unbounded}, {"basis", r.basis}};
  j["value"] = r.unbounded ? json(nullptr) : json(r.value);
  return j;
}

json ExperimentReport::to_json() const {
  json j{{"config", config}, {"totals", totals}, {"runtime_sec", runtime_sec}};
  j["ratio"] = ratio ? ratio_to_json(*ratio) : json(nullptr);
  j["regret"] = regret ? json(*regret) : json(nullptr);
  j["slope"] = slope ? slope_to_json(*slope) : json(nullptr);
  if (!details.empty()) j["details"] = details;
  return j;
}

Instance make_instance(const ExperimentConfig& cfg, double m) {
  const double gamma = cfg.gamma.value_or(1.0);
  if (cfg.instance == "ramp") return gen_ramp(m, cfg.mprime, cfg.n);
  if (cfg.instance == "drift") return gen_drift(m, gamma, cfg.mprime);
  if (cfg.instance == "single") return gen_single_step(m);
  if (cfg.instance == "fixedpoint") return gen_fixed_point(m, cfg.T);
  if (cfg.instance == "circle") return circle_adversary(m, gamma, 1e-3, 1.0, cfg.T);
  if (cfg.instance == "random-quadratic") return gen_random_quadratic(m, 2, cfg.T, cfg.seed);
  throw ConfigError("config.instance: unknown family " + cfg.instance);
}

AlgoConfig make_algorithm(const ExperimentConfig& cfg, double m) {
  AlgoConfig algo{StayPut{}, cfg.solve};
  if (cfg.algo == "obd") {
    algo.which = Obd{cfg.gamma.value_or(1.0)};
  } else if (cfg.algo == "gobd") {
    algo.which = Gobd{cfg.gamma.value_or(1.0), cfg.mu.value_or(1.0)};
  } else if (cfg.algo == "robd") {
    const auto [l1, l2] = robd_optimal_params(m, 1.0, 1.0);
    algo.which = Robd{cfg.lambda1.value_or(l1), cfg.lambda2.value_or(l2)};
  } else if (cfg.algo == "follow") {
    algo.which = FollowMinimizer{};
  } else if (cfg.algo != "stay") {
    throw ConfigError("config.algo: unknown algorithm " + cfg.algo);
  }
  return algo;
}

// ---------------------------------------------------------------------------
// Export

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string steps_csv(const RunResult& run, const std::vector<double>& oracle_step) {
  std::ostringstream out;
  out << "t,x,hit,move,cum_alg,cum_oracle\n";
  double cum_alg = 0.0, cum_oracle = 0.0;
  for (int t = 1; t <= run.rounds(); ++t) {
    cum_alg += run.hit[t - 1] + run.move[t - 1];
    if (static_cast<std::size_t>(t) <= oracle_step.size()) cum_oracle += oracle_step[t - 1];
    out << t << ',';
    const Point& x = run.trajectory[t];
    for (Eigen::Index k = 0; k < x.size(); ++k) out << (k ? ";" : "") << format_real(x(k));
    out << ',' << format_real(run.hit[t - 1]) << ',' << format_real(run.move[t - 1]) << ','
        << format_real(cum_alg) << ',' << format_real(cum_oracle) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "m,alg_total,oracle_total,ratio\n";
  for (const auto& r : rows) {
    out << format_real(r.m) << ',' << format_real(r.ratio.alg_total) << ',' << format_real(r.ratio.oracle_total)
        << ',' << (r.ratio.unbounded ? std::string("inf") : format_real(r.ratio.value)) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

namespace {

void do_run(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const Instance inst = make_instance(cfg, cfg.m);
  Measured m = measure(make_algorithm(cfg, cfg.m), inst);
  rep.totals = run_totals(m.run, m.ratio);
  rep.ratio = m.ratio;
  rep.run = std::move(m.run);
  rep.oracle_step = std::move(m.oracle_step);
}

void do_sweep(const ExperimentConfig& cfg, ExperimentReport& rep) {
  std::vector<std::future<Ratio>> jobs;
  for (double m : cfg.m_grid) {
    jobs.push_back(std::async(std::launch::async, [&cfg, m] {
      const Instance inst = make_instance(cfg, m);
      return measure(make_algorithm(cfg, m), inst).ratio;
    }));
  }
  std::vector<double> ratios;
  json rows = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    SweepRow row{cfg.m_grid[i], jobs[i].get()};
    ratios.push_back(row.ratio.value);
    rows.push_back(json{{"m", row.m}, {"alg_total", row.ratio.alg_total},
                        {"oracle_total", row.ratio.oracle_total}, {"ratio", ratio_to_json(row.ratio)}});
    rep.rows.push_back(row);
  }
  rep.totals = json{{"rows", rows}};
  SlopeFit fit = fit_loglog_slope(cfg.m_grid, ratios);
  for (const auto& w : fit.warnings) std::cerr << "warning: " << w << "\n";
  rep.slope = std::move(fit);
}

void do_lowerbound(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const double m = cfg.m;
  const SolveSettings& s = cfg.solve;
  if (cfg.which == "theorem1") {
    // Stays at 0 through the flat rounds, then takes the optimal single step.
    const Instance inst = gen_ramp(m, cfg.mprime, cfg.n);
    Measured r = measure(AlgoConfig{Robd{1.0, 0.0}, s}, inst);
    const double bound = general_lower_bound(m);
    rep.details = json{{"lower_bound", bound}, {"ratio_over_bound", r.ratio.value / bound}};
    rep.totals = run_totals(r.run, r.ratio);
    rep.ratio = r.ratio;
    rep.run = std::move(r.run);
    rep.oracle_step = std::move(r.oracle_step);
  } else if (cfg.which == "theorem2") {
    const ObdBestGamma best = obd_best_gamma(m, default_gamma_grid(), cfg.T, s);
    const AlgoConfig algo{Obd{best.gamma}, s};
    Measured r = measure(algo, gen_drift(m, best.gamma, cfg.mprime));
    rep.details = json{{"best_gamma", best.gamma},
                       {"circle_steady_ratio", best.circle_ratio},
                       {"drift_ratio", best.drift_ratio},
                       {"worst_ratio", best.ratio},
                       {"m_pow_minus_two_thirds", std::pow(m, -2.0 / 3.0)}};
    rep.totals = run_totals(r.run, r.ratio);
    rep.ratio = competitive_ratio(best.ratio, 1.0, "worst of circle (vs comparator) and drift (vs OPT)");
    rep.run = std::move(r.run);
    rep.oracle_step = std::move(r.oracle_step);
  } else {
    const double lambda1 = cfg.lambda1.value_or(std::min(1.0, std::max(0.5, 0.5 * (1.0 + m))));
    if (!(lambda1 > m)) throw ConfigError("config.lambda1: theorem5 needs lambda1 > m");
    const Instance fixed = gen_fixed_point(m, cfg.T);
    Measured stuck = measure(AlgoConfig{Robd{lambda1, 0.0}, s}, fixed);
    double drift = 0.0;
    for (const auto& x : stuck.run.trajectory) drift = std::max(drift, std::abs(x(0) + 1.0));
    const Measured greedy = measure(AlgoConfig{Gobd{1.0, 1.0}, s}, fixed);
    const Instance single = gen_single_step(m);
    const Measured small = measure(AlgoConfig{Robd{m, 0.0}, s}, single);
    rep.details = json{{"robd_lambda1", lambda1},
                       {"robd_max_displacement", drift},
                       {"gobd_ratio", ratio_to_json(greedy.ratio)},
                       {"gobd_x1", greedy.run.trajectory.at(1)(0)},
                       {"single_step_ratio", ratio_to_json(small.ratio)},
                       {"single_step_reference", 1.0 / (4.0 * m)}};
    rep.totals = run_totals(stuck.run, stuck.ratio);
    rep.ratio = stuck.ratio;
    rep.run = std::move(stuck.run);
    rep.oracle_step = std::move(stuck.oracle_step);
  }
}

void do_regret(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const double m = cfg.m;
  const double L = cfg.L.value_or(std::sqrt(static_cast<double>(cfg.T)));
  const Instance inst = gen_regret_stream(m, cfg.T, kRegretStreamAmplitude, kRegretStreamNoise, cfg.seed);
  const auto [l1, l2] = robd_regret_params(m, 1.0, 1.0);
  RunResult r = run(AlgoConfig{Robd{l1, l2}, cfg.solve}, inst);
  const OfflineResult opt_L = l_constrained_optimal(inst, L, cfg.solve);
  require_completed(r);
  const double regret = r.total - opt_L.total;
  const StreamGeometry geo = stream_geometry(inst);

  json sensitivity = json::array();
  for (double K : {0.1, 1.0, 10.0}) {
    const double lambda2 = K * geo.G / (geo.D * geo.D) * std::sqrt(L / cfg.T);
    const RunResult rk = run(AlgoConfig{Robd{l1, lambda2}, cfg.solve}, inst);
    require_completed(rk);
    sensitivity.push_back(json{{"K", K}, {"lambda2", lambda2}, {"regret", rk.total - opt_L.total}});
  }
  rep.regret = regret;
  rep.totals = json{{"alg_total", r.total}, {"opt_L_total", opt_L.total}, {"opt_L_movement", opt_L.movement_total},
                    {"L", L}};
  rep.details = json{{"lambda1", l1},
                     {"lambda2", l2},
                     {"normalized_regret", regret / std::sqrt(cfg.T * L)},
                     {"G", geo.G},
                     {"D", geo.D},
                     {"K_sensitivity", sensitivity}};
  rep.oracle_step = per_step(inst.costs, inst.movement, opt_L.trajectory);
  rep.run = std::move(r);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.config = cfg.to_json();
  if (cfg.command == "run") do_run(cfg, rep);
  else if (cfg.command == "sweep") do_sweep(cfg, rep);
  else if (cfg.command == "lowerbound") do_lowerbound(cfg, rep);
  else do_regret(cfg, rep);
  rep.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!cfg.out.empty()) {
    write_file(cfg.out + ".csv", cfg.command == "sweep" ? sweep_csv(rep.rows) : steps_csv(*rep.run, rep.oracle_step));
    write_file(cfg.out + ".json", rep.to_json().dump(2) + "\n");
  }
  return rep;
}

}  // namespace soco
