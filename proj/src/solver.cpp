#include "soco/solver.hpp"

#include <cmath>
#include <limits>

namespace soco {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kWeightFloor = 1e-300;
constexpr double kWeightCeil = 1e300;
constexpr int kMaxBisections = 400;

Point project_or_self(const Projection& project, const Point& x) { return project ? project(x) : x; }

// Geometric bisection on a weight w > 0 for a function that is monotone in w.
// `sign_of(w)` returns the value whose root is sought; it must be decreasing
// (positive for small w, negative for large w).
template <typename Eval>
double bisect_weight(Eval&& value_at, double lo, double hi, double tol, double* best_abs) {
  double best_w = hi;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    const double v = value_at(mid);
    if (std::abs(v) < best) {
      best = std::abs(v);
      best_w = mid;
    }
    if (std::abs(v) <= tol) break;
    if (v > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 4.0 * kEps) break;
  }
  *best_abs = best;
  return best_w;
}

}  // namespace

void SolveSettings::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("solve settings: grad_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("solve settings: max_iters must be >= 1");
  if (!(bisect_tol > 0.0)) throw std::invalid_argument("solve settings: bisect_tol must be > 0");
  if (!(backtrack.shrink > 0.0 && backtrack.shrink < 1.0)) {
    throw std::invalid_argument("solve settings: backtrack.shrink must lie in (0, 1)");
  }
  if (!(backtrack.armijo > 0.0 && backtrack.armijo < 1.0)) {
    throw std::invalid_argument("solve settings: backtrack.armijo must lie in (0, 1)");
  }
}

double stationarity(const Objective& F, const Point& x, const Projection& project) {
  const Point g = F.grad(x);
  return (x - project_or_self(project, x - g)).norm();
}

Point minimize_strongly_convex(const Objective& F, const Point& x_init, const SolveSettings& s,
                               const Projection& project) {
  s.validate();
  if (!(F.mu > 0.0)) throw std::invalid_argument("minimize_strongly_convex: mu must be > 0");
  Point x = project_or_self(project, x_init);
  double fx = F.eval(x);
  if (!std::isfinite(fx)) throw SolverError("minimize_strongly_convex: non-finite objective at start", x, NAN);
  Point g = F.grad(x);
  double residual = (x - project_or_self(project, x - g)).norm();
  double step = 1.0 / std::max(F.mu, g.norm());

  for (int iter = 0; iter < s.max_iters; ++iter) {
    if (residual <= s.grad_tol) return x;

    Point trial;
    double f_trial = 0.0;
    bool accepted = false;
    while (step > kWeightFloor) {
      trial = project_or_self(project, x - step * g);
      f_trial = F.eval(trial);
      if (std::isfinite(f_trial)) {
        const double predicted = g.dot(trial - x);
        if (f_trial <= fx + s.backtrack.armijo * predicted) {
          accepted = true;
          break;
        }
        // Near the optimum objective differences drown in rounding; accept any
        // step that is flat in value and reduces the stationarity measure.
        if (f_trial <= fx + 16.0 * kEps * std::max(1.0, std::abs(fx))) {
          const Point g_trial = F.grad(trial);
          if ((trial - project_or_self(project, trial - g_trial)).norm() < residual) {
            accepted = true;
            break;
          }
        }
      }
      step *= s.backtrack.shrink;
    }
    if (!accepted) {
      throw SolverError("minimize_strongly_convex: line search stalled", x, residual);
    }

    const Point g_trial = F.grad(trial);
    const Point ds = trial - x;
    const Point dy = g_trial - g;
    const double sy = ds.dot(dy);
    step = sy > 0.0 ? ds.squaredNorm() / sy : step / s.backtrack.shrink;

    x = trial;
    fx = f_trial;
    g = g_trial;
    residual = (x - project_or_self(project, x - g)).norm();
  }
  if (residual <= s.grad_tol) return x;
  throw SolverError("minimize_strongly_convex: max_iters exceeded", x, residual);
}

Point proximal_point(const HittingCost& f, const Point& center, double weight, const SolveSettings& s) {
  if (!(weight > 0.0)) throw std::invalid_argument("proximal_point: weight must be > 0");
  if (f.has_prox()) return f.prox(center, weight);
  if (f.kind() != CostKind::StronglyConvex) {
    throw std::invalid_argument("proximal_point: no closed form for a non-convex cost");
  }
  Objective F;
  F.eval = [&f, &center, weight](const Point& x) { return f(x) + 0.5 * weight * (x - center).squaredNorm(); };
  F.grad = [&f, &center, weight](const Point& x) -> Point { return f.gradient(x) + weight * (x - center); };
  F.mu = f.m() + weight;
  return minimize_strongly_convex(F, center, s);
}

Point project_sublevel(const HittingCost& f, double level, const Point& x0, const SolveSettings& s) {
  s.validate();
  require_finite(x0, "project_sublevel x0");
  const double fmin = f.min_value();
  if (level < fmin - 1e-12 * std::max(1.0, std::abs(fmin))) {
    throw std::invalid_argument("project_sublevel: level below the minimum value");
  }
  const double f0 = f(x0);
  if (f0 <= level) return x0;
  if (level <= fmin) return f.minimizer();
  const double tol = s.bisect_tol * std::max(1.0, level);

  if (f.kind() == CostKind::QuasiconvexGrowth) {
    if (f.dimension() != 1) {
      throw std::invalid_argument("project_sublevel: quasiconvex costs are supported in one dimension");
    }
    // In 1-d every sublevel set is an interval containing the minimizer, so the
    // projection lies on the segment from the minimizer to x0.
    const Point& v = f.minimizer();
    double lo = 0.0, hi = 1.0;
    Point best = x0;
    double best_gap = std::abs(f0 - level);
    for (int i = 0; i < kMaxBisections && hi - lo > kEps; ++i) {
      const double mid = 0.5 * (lo + hi);
      const Point x = v + mid * (x0 - v);
      const double gap = f(x) - level;
      if (std::abs(gap) < best_gap) {
        best_gap = std::abs(gap);
        best = x;
      }
      if (std::abs(gap) <= tol) break;
      (gap > 0.0 ? hi : lo) = mid;
    }
    return best;
  }

  // For convex f, the projection onto {f <= l} is the proximal point of x0 at
  // the weight where f(prox) = l; f(prox(x0, w)) increases with w.
  auto gap_at = [&](double w) { return level - f(proximal_point(f, x0, w, s)); };
  double lo = 1.0, hi = 1.0;
  while (gap_at(hi) > 0.0) {
    hi *= 16.0;
    if (hi > kWeightCeil) return x0;
  }
  while (gap_at(lo) < 0.0) {
    lo /= 16.0;
    if (lo < kWeightFloor) return f.minimizer();
  }
  double best_abs = 0.0;
  const double w = bisect_weight(gap_at, lo, hi, tol, &best_abs);
  return proximal_point(f, x0, w, s);
}

BalancePoint obd_balance_search(const HittingCost& f, const Point& x_prev, double gamma,
                                const SolveSettings& s) {
  s.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("obd_balance_search: gamma must be > 0");
  require_finite(x_prev, "obd_balance_search x_prev");
  const double fmin = f.min_value();
  if (f(x_prev) <= fmin) return {x_prev, fmin};

  auto residual_of = [&](const Point& x) {
    return 0.5 * (x - x_prev).squaredNorm() - gamma * (f(x) - fmin);
  };
  const double tol = s.bisect_tol * (1.0 + gamma);

  if (f.kind() == CostKind::QuasiconvexGrowth) {
    if (f.dimension() != 1) {
      throw std::invalid_argument("obd_balance_search: quasiconvex costs are supported in one dimension");
    }
    // Walk the segment from the minimizer (theta = 0) to x_prev (theta = 1);
    // the residual decreases along it.
    const Point& v = f.minimizer();
    double lo = 0.0, hi = 1.0;
    Point best = x_prev;
    double best_abs = std::abs(residual_of(x_prev));
    for (int i = 0; i < kMaxBisections && hi - lo > kEps; ++i) {
      const double mid = 0.5 * (lo + hi);
      const Point x = v + mid * (x_prev - v);
      const double r = residual_of(x);
      if (std::abs(r) < best_abs) {
        best_abs = std::abs(r);
        best = x;
      }
      if (std::abs(r) <= tol) break;
      (r > 0.0 ? lo : hi) = mid;
    }
    return {best, f(best)};
  }

  // Along the proximal path w -> prox(x_prev, w) every point is the projection of
  // x_prev onto its own level set, and the residual decreases in w.
  auto residual_at = [&](double w) { return residual_of(proximal_point(f, x_prev, w, s)); };
  double lo = 1.0, hi = 1.0;
  while (residual_at(hi) > 0.0) {
    hi *= 16.0;
    if (hi > kWeightCeil) return {x_prev, f(x_prev)};
  }
  while (residual_at(lo) < 0.0) {
    lo /= 16.0;
    if (lo < kWeightFloor) return {f.minimizer(), fmin};
  }
  double best_abs = 0.0;
  const double w = bisect_weight(residual_at, lo, hi, tol, &best_abs);
  Point x = proximal_point(f, x_prev, w, s);
  const double level = f(x);
  return {std::move(x), level};
}

}  // namespace soco
