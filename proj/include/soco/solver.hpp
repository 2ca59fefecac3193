#pragma once

// Inner solvers used by every online step: strongly convex minimization,
// projection onto sublevel sets, and the balanced-descent level search.

#include "soco/costs.hpp"

#include <functional>
#include <stdexcept>

namespace soco {

struct Backtracking {
  double shrink = 0.5;
  double armijo = 1e-4;
};

struct SolveSettings {
  double grad_tol = 1e-9;
  int max_iters = 100000;
  double bisect_tol = 1e-10;
  Backtracking backtrack;

  void validate() const;
};

/// Carries the best iterate when a solve stops without meeting its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Point best, double residual)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}
  const Point& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Point best_;
  double residual_;
};

struct Objective {
  std::function<double(const Point&)> eval;
  std::function<Point(const Point&)> grad;
  double mu = 0.0;  // strong convexity
};

using Projection = std::function<Point(const Point&)>;

/// Stationarity measure ||x - P(x - grad F(x))||; equals ||grad F(x)|| without a projection.
double stationarity(const Objective& F, const Point& x, const Projection& project = {});

/// Projected gradient descent with Barzilai-Borwein steps and Armijo backtracking.
/// Returns x with stationarity(F, x) <= s.grad_tol.
Point minimize_strongly_convex(const Objective& F, const Point& x_init, const SolveSettings& s,
                               const Projection& project = {});

/// argmin_x f(x) + (weight/2) ||x - center||^2, using the cost's closed form when present.
Point proximal_point(const HittingCost& f, const Point& center, double weight, const SolveSettings& s);

/// Euclidean projection of x0 onto {y : f(y) <= level}.
Point project_sublevel(const HittingCost& f, double level, const Point& x0, const SolveSettings& s);

struct BalancePoint {
  Point x;
  double level;
};

/// Finds l in [min f, f(x_prev)] with 1/2 ||x(l) - x_prev||^2 = gamma (l - min f), where
/// x(l) is the projection of x_prev onto the l-sublevel set.
BalancePoint obd_balance_search(const HittingCost& f, const Point& x_prev, double gamma,
                                const SolveSettings& s);

}  // namespace soco
