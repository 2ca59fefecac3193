#include "soco/offline.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <limits>

namespace soco {

namespace {

constexpr int kMaxNewtonIters = 200;

void require_offline_instance(const Instance& inst, const char* who) {
  inst.validate();
  if (inst.is_adaptive()) throw std::invalid_argument(std::string(who) + ": adaptive instances have no offline oracle");
  if (!inst.movement.is_squared_l2()) {
    throw std::invalid_argument(std::string(who) + ": requires the squared-l2 movement cost");
  }
  for (const auto& f : inst.costs) {
    if (f.kind() != CostKind::StronglyConvex) {
      throw std::invalid_argument(std::string(who) + ": requires convex hitting costs");
    }
  }
}

Matrix cost_hessian(const HittingCost& f, const Point& x) {
  if (f.has_hessian()) return f.hessian(x);
  const auto d = x.size();
  Matrix H(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double step = 1e-6 * std::max(1.0, std::abs(x(k)));
    Point up = x, down = x;
    up(k) += step;
    down(k) -= step;
    H.col(k) = (f.gradient(up) - f.gradient(down)) / (2.0 * step);
  }
  return 0.5 * (H + H.transpose());
}

// Stacked problem over X = (x_1, ..., x_T), each block of size d.
struct Chain {
  const std::vector<HittingCost>& costs;
  const Point& x0;
  double weight;
  int T;
  int d;

  Point block(const Eigen::VectorXd& X, int t) const {  // t in 0..T, 0 is x0
    return t == 0 ? x0 : Point(X.segment((t - 1) * d, d));
  }

  double objective(const Eigen::VectorXd& X) const {
    double total = 0.0;
    for (int t = 1; t <= T; ++t) {
      const Point xt = block(X, t);
      total += costs[t - 1](xt) + weight * 0.5 * (xt - block(X, t - 1)).squaredNorm();
    }
    return total;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& X) const {
    Eigen::VectorXd g(T * d);
    for (int t = 1; t <= T; ++t) {
      const Point xt = block(X, t);
      Point gt = costs[t - 1].gradient(xt) + weight * (xt - block(X, t - 1));
      if (t < T) gt -= weight * (block(X, t + 1) - xt);
      g.segment((t - 1) * d, d) = gt;
    }
    return g;
  }

  Eigen::SparseMatrix<double> hessian(const Eigen::VectorXd& X) const {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(T) * d * (3 * d));
    for (int t = 1; t <= T; ++t) {
      const int base = (t - 1) * d;
      Matrix H = cost_hessian(costs[t - 1], block(X, t));
      H.diagonal().array() += weight * (t < T ? 2.0 : 1.0);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (H(i, j) != 0.0) entries.emplace_back(base + i, base + j, H(i, j));
        }
      }
      if (t < T) {
        for (int i = 0; i < d; ++i) {
          entries.emplace_back(base + i, base + d + i, -weight);
          entries.emplace_back(base + d + i, base + i, -weight);
        }
      }
    }
    Eigen::SparseMatrix<double> M(T * d, T * d);
    M.setFromTriplets(entries.begin(), entries.end());
    return M;
  }
};

void fill_totals(const Instance& inst, OfflineResult& r) {
  r.total = 0.0;
  r.movement_total = 0.0;
  for (std::size_t t = 1; t < r.trajectory.size(); ++t) {
    const double move = inst.movement(r.trajectory[t], r.trajectory[t - 1]);
    r.movement_total += move;
    r.total += inst.costs[t - 1](r.trajectory[t]) + move;
  }
}

}  // namespace

OfflineResult offline_optimal_weighted(const Instance& inst, double movement_weight, const SolveSettings& s,
                                       const std::vector<Point>* warm_start) {
  require_offline_instance(inst, "offline_optimal");
  s.validate();
  if (!(movement_weight > 0.0)) throw std::invalid_argument("offline_optimal: movement weight must be > 0");
  const int T = static_cast<int>(inst.costs.size());
  const int d = inst.dimension();
  const Chain chain{inst.costs, inst.x0, movement_weight, T, d};

  Eigen::VectorXd X(T * d);
  for (int t = 1; t <= T; ++t) {
    if (warm_start != nullptr && static_cast<int>(warm_start->size()) == T + 1) {
      X.segment((t - 1) * d, d) = (*warm_start)[t];
    } else {
      X.segment((t - 1) * d, d) = inst.costs[t - 1].minimizer();
    }
  }

  const double tol = s.grad_tol * std::sqrt(static_cast<double>(T));
  double J = chain.objective(X);
  Eigen::VectorXd g = chain.gradient(X);
  double gnorm = g.norm();
  OfflineResult result;
  int iter = 0;
  for (; iter < std::min(s.max_iters, kMaxNewtonIters) && gnorm > tol; ++iter) {
    Eigen::SparseMatrix<double> H = chain.hessian(X);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    double shift = 0.0;
    Eigen::VectorXd p;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::SparseMatrix<double> shifted = H;
      if (shift > 0.0) {
        for (int i = 0; i < T * d; ++i) shifted.coeffRef(i, i) += shift;
      }
      ldlt.compute(shifted);
      if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) {
        p = ldlt.solve(-g);
        break;
      }
      shift = shift == 0.0 ? 1e-8 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff()) : 10.0 * shift;
    }
    if (p.size() == 0 || !p.allFinite()) break;

    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    double J_trial = 0.0;
    Eigen::VectorXd g_trial;
    const double slope = g.dot(p);
    while (step > 1e-12) {
      trial = X + step * p;
      J_trial = chain.objective(trial);
      if (std::isfinite(J_trial) && J_trial <= J + s.backtrack.armijo * step * slope) {
        accepted = true;
        break;
      }
      // In the rounding regime the objective is flat; judge by the gradient.
      if (std::isfinite(J_trial) && J_trial <= J + 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(J))) {
        g_trial = chain.gradient(trial);
        if (g_trial.norm() < gnorm) {
          accepted = true;
          break;
        }
      }
      step *= s.backtrack.shrink;
    }
    if (!accepted) break;
    X = trial;
    J = J_trial;
    g = chain.gradient(X);
    gnorm = g.norm();
  }

  result.iterations = iter;
  result.residual = gnorm;
  result.converged = gnorm <= tol;
  result.trajectory.reserve(T + 1);
  for (int t = 0; t <= T; ++t) result.trajectory.push_back(chain.block(X, t));
  fill_totals(inst, result);
  return result;
}

OfflineResult offline_optimal(const Instance& inst, const SolveSettings& s) {
  return offline_optimal_weighted(inst, 1.0, s);
}

QuadraticChain quadratic_chain(double m, int n) {
  if (!(m > 0.0)) throw std::invalid_argument("quadratic_chain: m must be > 0");
  if (n < 0) throw std::invalid_argument("quadratic_chain: n must be >= 0");
  QuadraticChain chain;
  chain.a.reserve(n + 1);
  chain.a.push_back(1.0);
  for (int k = 0; k < n; ++k) {
    const double a = chain.a.back();
    chain.a.push_back((a + m) / (a + m + 1.0));
  }
  chain.limit = 0.5 * (-m + std::sqrt(m * m + 4.0 * m));
  return chain;
}

OfflineResult l_constrained_optimal(const Instance& inst, double L, const SolveSettings& s) {
  require_offline_instance(inst, "l_constrained_optimal");
  if (!(L >= 0.0)) throw std::invalid_argument("l_constrained_optimal: L must be >= 0");
  const int T = static_cast<int>(inst.costs.size());

  if (L == 0.0) {
    OfflineResult stay;
    stay.trajectory.assign(T + 1, inst.x0);
    stay.converged = true;
    stay.multiplier = std::numeric_limits<double>::infinity();
    fill_totals(inst, stay);
    return stay;
  }

  const double budget = L * (1.0 + 1e-6);
  OfflineResult free = offline_optimal(inst, s);
  if (free.movement_total <= budget) return free;

  // Movement of the minimizer of sum f + (1 + nu) sum c decreases in nu.
  double lo = 0.0;
  double hi = 1.0;
  OfflineResult feasible = offline_optimal_weighted(inst, 1.0 + hi, s, &free.trajectory);
  while (feasible.movement_total > budget) {
    lo = hi;
    hi *= 4.0;
    if (hi > 1e15) throw std::runtime_error("l_constrained_optimal: multiplier bracket diverged");
    feasible = offline_optimal_weighted(inst, 1.0 + hi, s, &feasible.trajectory);
  }
  feasible.multiplier = hi;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    OfflineResult r = offline_optimal_weighted(inst, 1.0 + mid, s, &feasible.trajectory);
    if (r.movement_total <= budget) {
      hi = mid;
      feasible = std::move(r);
      feasible.multiplier = mid;
      if (feasible.movement_total >= L * (1.0 - 1e-6)) break;
    } else {
      lo = mid;
    }
  }
  return feasible;
}

OfflineResult grid_oracle_1d(const Instance& inst, double lo, double hi, int points_per_axis) {
  inst.validate();
  if (inst.is_adaptive()) throw std::invalid_argument("grid_oracle_1d: adaptive instances have no offline oracle");
  if (inst.dimension() != 1) throw std::invalid_argument("grid_oracle_1d: dimension must be 1");
  const int T = static_cast<int>(inst.costs.size());
  if (T > 8) throw std::invalid_argument("grid_oracle_1d: T must be <= 8");
  if (points_per_axis < 1 || points_per_axis > 400) {
    throw std::invalid_argument("grid_oracle_1d: points_per_axis must lie in [1, 400]");
  }
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid_oracle_1d: invalid grid bounds");
  }
  const int n = points_per_axis;
  std::vector<Point> grid;
  grid.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double x = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / (n - 1);
    grid.push_back(Point::Constant(1, x));
  }

  std::vector<std::vector<double>> value(T, std::vector<double>(n));
  std::vector<std::vector<int>> parent(T, std::vector<int>(n, -1));
  for (int j = 0; j < n; ++j) value[0][j] = inst.costs[0](grid[j]) + inst.movement(grid[j], inst.x0);
  for (int t = 1; t < T; ++t) {
    for (int j = 0; j < n; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const double v = value[t - 1][k] + inst.movement(grid[j], grid[k]);
        if (v < best) {
          best = v;
          parent[t][j] = k;
        }
      }
      value[t][j] = best + inst.costs[t](grid[j]);
    }
  }

  int j = 0;
  for (int k = 1; k < n; ++k) {
    if (value[T - 1][k] < value[T - 1][j]) j = k;
  }
  OfflineResult result;
  result.trajectory.assign(T + 1, inst.x0);
  for (int t = T - 1; t >= 0; --t) {
    result.trajectory[t + 1] = grid[j];
    if (n > 1 && (j == 0 || j == n - 1)) result.on_boundary = true;
    if (t > 0) j = parent[t][j];
  }
  result.converged = true;
  fill_totals(inst, result);
  return result;
}

}  // namespace soco
