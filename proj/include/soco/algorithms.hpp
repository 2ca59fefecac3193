#pragma once

// Online algorithms (OBD, Greedy OBD, Regularized OBD, two baselines) and the
// run loop that plays them against an instance.

#include "soco/instance.hpp"
#include "soco/solver.hpp"

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace soco {

struct Obd {
  double gamma = 1.0;
};
struct Gobd {
  double gamma = 1.0;
  double mu = 1.0;
};
struct Robd {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
};
struct StayPut {};
struct FollowMinimizer {};

using Algorithm = std::variant<Obd, Gobd, Robd, StayPut, FollowMinimizer>;

struct AlgoConfig {
  Algorithm which;
  SolveSettings solve;

  void validate() const;
  std::string name() const;
};

Point obd_step(const HittingCost& f, const Point& x_prev, double gamma, const SolveSettings& s);

Point gobd_step(const HittingCost& f, const Point& x_prev, double gamma, double mu, double m,
                const SolveSettings& s);

/// argmin_x f(x) + lambda1 c(x, x_prev) + lambda2 c(x, v). Under the floored
/// simplex the minimization is projected onto the domain.
Point robd_step(const HittingCost& f, const Point& x_prev, double lambda1, double lambda2,
                const MovementCost& movement, const SolveSettings& s);

/// First-order residual of the R-OBD objective at x; the projected-gradient
/// residual on a constrained domain.
double robd_residual(const HittingCost& f, const Point& x, const Point& x_prev, double lambda1,
                     double lambda2, const MovementCost& movement);

/// |1/2 ||x - x_prev||^2 - gamma (f(x) - min f)|.
double obd_balance_residual(const HittingCost& f, const Point& x, const Point& x_prev, double gamma);

/// lambda1 = 2 / (1 + sqrt(1 + 4 beta^2 / (alpha m))), lambda2 = 0.
std::pair<double, double> robd_optimal_params(double m, double alpha, double beta);

/// lambda1 = max(2 / (1 + sqrt(1 + 4 beta^2 / (alpha m))), 1 - m / (4 beta)), lambda2 = 0.
std::pair<double, double> robd_regret_params(double m, double alpha, double beta);

/// Closed-form competitive-ratio upper bound for R-OBD:
/// max((m + lambda2 beta) / (lambda1 m), 1 + (beta^2 / alpha) lambda1 / (lambda2 beta + m)).
/// Throws std::invalid_argument for families without a closed form here.
double predicted_ratio(const Algorithm& which, double m, double alpha, double beta);

/// 1/2 (1 + sqrt(1 + 4/m)): no online algorithm does better on squared-l2 movement.
double general_lower_bound(double m);

struct RunResult {
  std::string algorithm;
  std::string family;
  std::vector<Point> trajectory;  // x_0..x_T
  std::vector<double> hit;
  std::vector<double> move;
  double total = 0.0;
  /// Balance residual for OBD-type steps, first-order residual for R-OBD, 0 for baselines.
  std::vector<double> residual;
  std::vector<HittingCost> costs;

  std::vector<Point> comparator;  // x*_0..x*_T when the instance supplies one
  std::vector<double> comparator_hit;
  std::vector<double> comparator_move;
  double comparator_total = 0.0;

  bool completed = true;
  std::string failure;
  std::shared_ptr<AdaptiveAdversary> adversary;

  int rounds() const { return static_cast<int>(hit.size()); }
  bool has_comparator() const { return !comparator.empty(); }
  double hit_total() const;
  double move_total() const;
};

/// Plays the algorithm against the instance. A failing step stops the run and
/// returns the partial result with completed = false and a diagnostic.
RunResult run(const AlgoConfig& algo, const Instance& inst);

}  // namespace soco
