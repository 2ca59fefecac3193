#include "soco/algorithms.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace soco {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Point entropy_gradient(const Point& x) { return (x.array().log() + 1.0).matrix(); }

double kl(const Point& x, const Point& y) {
  return (x.array() * (x.array() / y.array()).log() - x.array() + y.array()).sum();
}

}  // namespace

void AlgoConfig::validate() const {
  solve.validate();
  std::visit(Overloaded{
                 [](const Obd& a) {
                   if (!(a.gamma > 0.0)) throw std::invalid_argument("obd: gamma must be > 0");
                 },
                 [](const Gobd& a) {
                   if (!(a.gamma > 0.0)) throw std::invalid_argument("gobd: gamma must be > 0");
                   if (!(a.mu > 0.0)) throw std::invalid_argument("gobd: mu must be > 0");
                 },
                 [](const Robd& a) {
                   if (!(a.lambda1 > 0.0 && a.lambda1 <= 1.0)) {
                     throw std::invalid_argument("robd: lambda1 must lie in (0, 1]");
                   }
                   if (!(a.lambda2 >= 0.0)) throw std::invalid_argument("robd: lambda2 must be >= 0");
                 },
                 [](const StayPut&) {},
                 [](const FollowMinimizer&) {},
             },
             which);
}

std::string AlgoConfig::name() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const Obd& a) { out << "obd(gamma=" << a.gamma << ")"; },
                 [&](const Gobd& a) { out << "gobd(gamma=" << a.gamma << ",mu=" << a.mu << ")"; },
                 [&](const Robd& a) { out << "robd(lambda1=" << a.lambda1 << ",lambda2=" << a.lambda2 << ")"; },
                 [&](const StayPut&) { out << "stay"; },
                 [&](const FollowMinimizer&) { out << "follow"; },
             },
             which);
  return out.str();
}

Point obd_step(const HittingCost& f, const Point& x_prev, double gamma, const SolveSettings& s) {
  return obd_balance_search(f, x_prev, gamma, s).x;
}

Point gobd_step(const HittingCost& f, const Point& x_prev, double gamma, double mu, double m,
                const SolveSettings& s) {
  if (!(m >= 0.0)) throw std::invalid_argument("gobd_step: m must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("gobd_step: mu must be > 0");
  const double weight = mu * std::sqrt(m);
  if (weight >= 1.0) return f.minimizer();
  const Point obd = obd_step(f, x_prev, gamma, s);
  return weight * f.minimizer() + (1.0 - weight) * obd;
}

Point robd_step(const HittingCost& f, const Point& x_prev, double lambda1, double lambda2,
                const MovementCost& movement, const SolveSettings& s) {
  if (!(lambda1 >= 0.0 && lambda2 >= 0.0)) throw std::invalid_argument("robd_step: negative lambda");
  const Point& v = f.minimizer();
  if (movement.is_squared_l2()) {
    const double weight = lambda1 + lambda2;
    if (!(weight > 0.0)) return v;
    // Two quadratic pulls combine into one centered at their weighted mean.
    const Point center = (lambda1 * x_prev + lambda2 * v) / weight;
    return proximal_point(f, center, weight, s);
  }

  const Potential& h = movement.potential();
  h.require_in_domain(x_prev, "robd_step x_prev");
  if (lambda2 > 0.0) h.require_in_domain(v, "robd_step minimizer");
  const double mu = f.m() + (lambda1 + lambda2) * h.alpha();
  if (!(mu > 0.0)) throw std::invalid_argument("robd_step: composite objective is not strongly convex");
  Objective F;
  F.eval = [&](const Point& x) {
    double value = f(x) + lambda1 * kl(x, x_prev);
    if (lambda2 > 0.0) value += lambda2 * kl(x, v);
    return value;
  };
  const Point grad_prev = entropy_gradient(x_prev);
  const Point grad_v = lambda2 > 0.0 ? entropy_gradient(v) : Point::Zero(v.size());
  F.grad = [&](const Point& x) -> Point {
    const Point gx = entropy_gradient(x);
    Point g = f.gradient(x) + lambda1 * (gx - grad_prev);
    if (lambda2 > 0.0) g += lambda2 * (gx - grad_v);
    return g;
  };
  F.mu = mu;
  return minimize_strongly_convex(F, x_prev, s, [&h](const Point& x) { return h.project(x); });
}

double robd_residual(const HittingCost& f, const Point& x, const Point& x_prev, double lambda1,
                     double lambda2, const MovementCost& movement) {
  const Point& v = f.minimizer();
  if (movement.is_squared_l2()) {
    return (f.gradient(x) + lambda1 * (x - x_prev) + lambda2 * (x - v)).norm();
  }
  const Point gx = entropy_gradient(x);
  Point g = f.gradient(x) + lambda1 * (gx - entropy_gradient(x_prev));
  if (lambda2 > 0.0) g += lambda2 * (gx - entropy_gradient(v));
  return (x - movement.potential().project(x - g)).norm();
}

double obd_balance_residual(const HittingCost& f, const Point& x, const Point& x_prev, double gamma) {
  return std::abs(0.5 * (x - x_prev).squaredNorm() - gamma * (f(x) - f.min_value()));
}

namespace {

void require_positive(double m, double alpha, double beta, const char* who) {
  if (!(m > 0.0) || !(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": m, alpha and beta must be > 0");
  }
}

double optimal_lambda1(double m, double alpha, double beta) {
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * beta * beta / (alpha * m)));
}

}  // namespace

std::pair<double, double> robd_optimal_params(double m, double alpha, double beta) {
  require_positive(m, alpha, beta, "robd_optimal_params");
  return {optimal_lambda1(m, alpha, beta), 0.0};
}

std::pair<double, double> robd_regret_params(double m, double alpha, double beta) {
  require_positive(m, alpha, beta, "robd_regret_params");
  return {std::max(optimal_lambda1(m, alpha, beta), 1.0 - m / (4.0 * beta)), 0.0};
}

double predicted_ratio(const Algorithm& which, double m, double alpha, double beta) {
  require_positive(m, alpha, beta, "predicted_ratio");
  const auto* r = std::get_if<Robd>(&which);
  if (r == nullptr) throw std::invalid_argument("predicted_ratio: no closed-form bound for this algorithm");
  if (!(r->lambda1 > 0.0) || !(r->lambda2 >= 0.0)) {
    throw std::invalid_argument("predicted_ratio: invalid lambda");
  }
  const double first = (m + r->lambda2 * beta) / (r->lambda1 * m);
  const double second = 1.0 + (beta * beta / alpha) * r->lambda1 / (r->lambda2 * beta + m);
  return std::max(first, second);
}

double general_lower_bound(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("general_lower_bound: m must be > 0");
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 / m));
}

double RunResult::hit_total() const { return std::accumulate(hit.begin(), hit.end(), 0.0); }
double RunResult::move_total() const { return std::accumulate(move.begin(), move.end(), 0.0); }

RunResult run(const AlgoConfig& algo, const Instance& inst) {
  algo.validate();
  inst.validate();
  const bool needs_l2 = std::holds_alternative<Obd>(algo.which) || std::holds_alternative<Gobd>(algo.which);
  if (needs_l2 && !inst.movement.is_squared_l2()) {
    throw std::invalid_argument("run: OBD and G-OBD require the squared-l2 movement cost");
  }

  RunResult result;
  result.algorithm = algo.name();
  result.family = inst.family;
  std::shared_ptr<AdaptiveAdversary> adversary = inst.is_adaptive() ? inst.adversary() : nullptr;
  const int T = adversary ? adversary->rounds() : static_cast<int>(inst.costs.size());
  const Potential& h = inst.movement.potential();
  const SolveSettings& s = algo.solve;

  Point x = inst.x0;
  result.trajectory.push_back(x);
  for (int t = 1; t <= T; ++t) {
    try {
      const HittingCost f = adversary ? adversary->next(t, x) : inst.costs[t - 1];
      if (f.dimension() != inst.dimension()) throw std::invalid_argument("cost dimension mismatch");
      result.costs.push_back(f);
      double residual = 0.0;
      Point next = std::visit(
          Overloaded{
              [&](const Obd& a) -> Point {
                Point y = obd_step(f, x, a.gamma, s);
                residual = obd_balance_residual(f, y, x, a.gamma);
                return y;
              },
              [&](const Gobd& a) -> Point {
                if (a.mu * std::sqrt(inst.declared_m) >= 1.0) return f.minimizer();
                const Point y = obd_step(f, x, a.gamma, s);
                residual = obd_balance_residual(f, y, x, a.gamma);
                const double w = a.mu * std::sqrt(inst.declared_m);
                return w * f.minimizer() + (1.0 - w) * y;
              },
              [&](const Robd& a) -> Point {
                Point y = robd_step(f, x, a.lambda1, a.lambda2, inst.movement, s);
                residual = robd_residual(f, y, x, a.lambda1, a.lambda2, inst.movement);
                return y;
              },
              [&](const StayPut&) -> Point { return x; },
              [&](const FollowMinimizer&) -> Point {
                return h.is_unconstrained() ? f.minimizer() : h.project(f.minimizer());
              },
          },
          algo.which);
      require_finite(next, "run step");
      const double hit = f(next);
      const double move = inst.movement(next, x);
      result.hit.push_back(hit);
      result.move.push_back(move);
      result.residual.push_back(residual);
      result.trajectory.push_back(next);
      x = std::move(next);
    } catch (const std::exception& e) {
      result.completed = false;
      result.failure = "round " + std::to_string(t) + ": " + e.what();
      if (result.costs.size() > result.hit.size()) result.costs.pop_back();
      break;
    }
  }
  if (adversary && result.completed) adversary->finish(x);
  result.adversary = adversary;
  for (std::size_t t = 0; t < result.hit.size(); ++t) result.total += result.hit[t] + result.move[t];

  if (adversary) {
    result.comparator = adversary->comparator();
  } else if (inst.comparator) {
    result.comparator = *inst.comparator;
  }
  if (!result.comparator.empty()) {
    if (!result.completed || result.comparator.size() != result.trajectory.size()) {
      result.comparator.clear();
    } else {
      for (std::size_t t = 1; t < result.comparator.size(); ++t) {
        result.comparator_hit.push_back(result.costs[t - 1](result.comparator[t]));
        result.comparator_move.push_back(inst.movement(result.comparator[t], result.comparator[t - 1]));
        result.comparator_total += result.comparator_hit.back() + result.comparator_move.back();
      }
    }
  }
  return result;
}

}  // namespace soco
