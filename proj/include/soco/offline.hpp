#pragma once

// Offline comparators: the hindsight-optimal trajectory, its movement-budgeted
// variant, the one-dimensional quadratic chain recursion, and a brute-force
// grid oracle.

#include "soco/instance.hpp"
#include "soco/solver.hpp"

#include <vector>

namespace soco {

struct OfflineResult {
  std::vector<Point> trajectory;  // x_0..x_T
  double total = 0.0;
  double movement_total = 0.0;
  bool converged = false;
  /// Stacked-gradient norm for the Newton solve; 0 for exact oracles.
  double residual = 0.0;
  int iterations = 0;
  /// Lagrange multiplier on the movement budget (l_constrained_optimal only).
  double multiplier = 0.0;
  /// Set by grid_oracle_1d when the optimum touches the grid boundary.
  bool on_boundary = false;
};

/// Minimizes sum_t f_t(x_t) + c(x_t, x_{t-1}) over the whole trajectory by damped
/// Newton on the stacked variables. Requires a fixed instance, squared-l2
/// movement and convex costs. Converged when the stacked-gradient norm is at
/// most s.grad_tol * sqrt(T).
OfflineResult offline_optimal(const Instance& inst, const SolveSettings& s);

/// Same, with the movement cost scaled by `movement_weight` inside the objective
/// and an optional warm start x_1..x_T. Reported totals use the unscaled cost.
OfflineResult offline_optimal_weighted(const Instance& inst, double movement_weight, const SolveSettings& s,
                                       const std::vector<Point>* warm_start = nullptr);

struct QuadraticChain {
  std::vector<double> a;  // a_0..a_n
  double limit = 0.0;
};

/// a_0 = 1, a_{k+1} = (a_k + m) / (a_k + m + 1), with limit (-m + sqrt(m^2 + 4m)) / 2.
QuadraticChain quadratic_chain(double m, int n);

/// Best trajectory whose total movement cost is at most L (relative slack 1e-6),
/// found by bisection on a multiplier for the movement term.
OfflineResult l_constrained_optimal(const Instance& inst, double L, const SolveSettings& s);

/// Exact minimum over trajectories restricted to an evenly spaced grid on
/// [lo, hi] (the single point lo when points_per_axis = 1), by dynamic programming.
/// Requires dimension 1, T <= 8 and points_per_axis <= 400.
OfflineResult grid_oracle_1d(const Instance& inst, double lo, double hi, int points_per_axis);

}  // namespace soco
