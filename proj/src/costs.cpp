#include "soco/costs.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace soco {

HittingCost::HittingCost(Parts parts) {
  if (!parts.eval || !parts.grad) throw std::invalid_argument("hitting cost: eval and grad are required");
  if (parts.minimizer.size() < 1) throw std::invalid_argument("hitting cost: empty minimizer");
  require_finite(parts.minimizer, "hitting cost minimizer");
  if (!(parts.m >= 0.0)) throw std::invalid_argument("hitting cost: m must be >= 0");
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

HittingCost HittingCost::with_curvature(double m) const {
  Parts copy = *parts_;
  copy.m = m;
  return HittingCost(std::move(copy));
}

HittingCost HittingCost::black_box() const {
  Parts copy = *parts_;
  copy.hessian = nullptr;
  copy.prox = nullptr;
  return HittingCost(std::move(copy));
}

HittingCost make_quadratic(double m, const Point& v, double offset) {
  if (!(m > 0.0)) throw std::invalid_argument("make_quadratic: m must be > 0");
  if (!(offset >= 0.0)) throw std::invalid_argument("make_quadratic: offset must be >= 0");
  require_finite(v, "make_quadratic center");
  std::ostringstream label;
  label << "quadratic(m=" << m << ")";
  HittingCost::Parts parts;
  parts.label = label.str();
  parts.eval = [m, v, offset](const Point& x) { return 0.5 * m * (x - v).squaredNorm() + offset; };
  parts.grad = [m, v](const Point& x) -> Point { return m * (x - v); };
  parts.hessian = [m, d = v.size()](const Point&) -> Matrix { return m * Matrix::Identity(d, d); };
  parts.prox = [m, v](const Point& c, double w) -> Point { return (m * v + w * c) / (m + w); };
  parts.minimizer = v;
  parts.min_value = offset;
  parts.m = m;
  return HittingCost(std::move(parts));
}

HittingCost make_anisotropic_quadratic(const Matrix& Q, const Point& v, double offset) {
  if (Q.rows() != Q.cols() || Q.rows() != v.size()) {
    throw std::invalid_argument("make_anisotropic_quadratic: shape mismatch");
  }
  if (!(offset >= 0.0)) throw std::invalid_argument("make_anisotropic_quadratic: offset must be >= 0");
  const Matrix sym = 0.5 * (Q + Q.transpose());
  const double m = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (!(m > 0.0)) throw std::invalid_argument("make_anisotropic_quadratic: Q must be positive definite");
  HittingCost::Parts parts;
  parts.label = "anisotropic-quadratic";
  parts.eval = [sym, v, offset](const Point& x) {
    const Point r = x - v;
    return 0.5 * r.dot(sym * r) + offset;
  };
  parts.grad = [sym, v](const Point& x) -> Point { return sym * (x - v); };
  parts.hessian = [sym](const Point&) -> Matrix { return sym; };
  parts.prox = [sym, v](const Point& c, double w) -> Point {
    const Matrix lhs = sym + w * Matrix::Identity(sym.rows(), sym.cols());
    return lhs.ldlt().solve(sym * v + w * c);
  };
  parts.minimizer = v;
  parts.min_value = offset;
  parts.m = m;
  return HittingCost(std::move(parts));
}

HittingCost make_tilted_quadratic(double m, const Point& center, const Point& line_point,
                                  const Point& line_dir, double tilt) {
  if (center.size() != 2 || line_point.size() != 2 || line_dir.size() != 2) {
    throw std::invalid_argument("make_tilted_quadratic: dimension must be 2");
  }
  if (!(m > 0.0)) throw std::invalid_argument("make_tilted_quadratic: m must be > 0");
  if (!(tilt > 0.0)) throw std::invalid_argument("make_tilted_quadratic: tilt must be > 0");
  const double dir_norm = line_dir.norm();
  if (!(dir_norm > 0.0)) throw std::invalid_argument("make_tilted_quadratic: line direction is zero");
  const Point d = line_dir / dir_norm;
  const Point n{{-d(1), d(0)}};
  const double offset = (center - line_point).dot(n);
  if (std::abs(offset) > 1e-9 * std::max(1.0, (center - line_point).norm())) {
    throw std::invalid_argument("make_tilted_quadratic: center is not on the line");
  }
  HittingCost::Parts parts;
  parts.label = "tilted-quadratic";
  parts.eval = [m, center, n, tilt](const Point& u) {
    const Point r = u - center;
    return 0.5 * m * r.squaredNorm() + tilt * std::abs(r.dot(n));
  };
  parts.grad = [m, center, n, tilt](const Point& u) -> Point {
    const Point r = u - center;
    const double side = r.dot(n);
    Point g = m * r;
    if (side > 0.0) g += tilt * n;
    if (side < 0.0) g -= tilt * n;
    return g;
  };
  parts.prox = [m, center, d, n, tilt](const Point& c, double w) -> Point {
    const Point r = c - center;
    const double along = w * r.dot(d) / (m + w);
    const double pulled = w * r.dot(n);
    const double across = std::copysign(std::max(std::abs(pulled) - tilt, 0.0), pulled) / (m + w);
    return center + along * d + across * n;
  };
  parts.minimizer = center;
  parts.min_value = 0.0;
  parts.m = m;
  parts.smooth = false;
  return HittingCost(std::move(parts));
}

HittingCost make_piecewise_quasiconvex(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("make_piecewise_quasiconvex: m must be > 0");
  auto value = [m](double x) {
    if (x >= -1.0 && x <= 0.0) return 0.5 * m * (1.0 - (x + 1.0) * (x + 1.0));
    return 0.5 * m * x * x;
  };
  HittingCost::Parts parts;
  parts.label = "piecewise-quasiconvex";
  parts.eval = [value](const Point& x) { return value(x(0)); };
  parts.grad = [m](const Point& x) -> Point {
    const double t = x(0);
    if (t >= -1.0 && t <= 0.0) return Point::Constant(1, -m * (t + 1.0));
    return Point::Constant(1, m * t);
  };
  // Exact minimization piece by piece; the middle piece is concave in f.
  parts.prox = [m, value](const Point& c, double w) -> Point {
    const double x0 = c(0);
    const double outer = w * x0 / (m + w);
    std::array<double, 5> candidates{std::min(outer, -1.0), std::max(outer, 0.0), -1.0, 0.0, -1.0};
    if (w != m) candidates[4] = std::clamp((m + w * x0) / (w - m), -1.0, 0.0);
    double best = candidates[0];
    double best_value = value(best) + 0.5 * w * (best - x0) * (best - x0);
    for (double x : candidates) {
      const double v = value(x) + 0.5 * w * (x - x0) * (x - x0);
      if (v < best_value) {
        best = x;
        best_value = v;
      }
    }
    return Point::Constant(1, best);
  };
  parts.minimizer = Point::Zero(1);
  parts.min_value = 0.0;
  parts.m = m;
  parts.kind = CostKind::QuasiconvexGrowth;
  parts.smooth = false;
  return HittingCost(std::move(parts));
}

CostValidation validate_cost(const HittingCost& f, int n_samples, double radius, std::uint64_t seed,
                             double tol) {
  if (n_samples < 1) throw std::invalid_argument("validate_cost: n_samples must be >= 1");
  const int d = f.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  CostValidation report;
  report.samples = n_samples;
  report.minimizer_mismatch = std::abs(f(f.minimizer()) - f.min_value());

  constexpr double kStep = 1e-6;
  constexpr double kGradTol = 1e-5;
  for (int i = 0; i < n_samples; ++i) {
    Point dir(d);
    for (int k = 0; k < d; ++k) dir(k) = normal(rng);
    const double norm = dir.norm();
    if (norm == 0.0) continue;
    const double r = radius * std::pow(uniform(rng), 1.0 / d);
    const Point x = f.minimizer() + (r / norm) * dir;
    const double fx = f(x);
    const double scale = std::max(1.0, std::abs(fx));

    const double growth = (f.min_value() + 0.5 * f.m() * (x - f.minimizer()).squaredNorm() - fx) / scale;
    report.max_growth_violation = std::max(report.max_growth_violation, growth);
    if (growth > tol) ++report.growth_violations;

    const double negativity = -fx / scale;
    report.max_negativity = std::max(report.max_negativity, negativity);
    if (negativity > tol) ++report.negativity_violations;

    const Point g = f.gradient(x);
    Point fd(d);
    for (int k = 0; k < d; ++k) {
      Point up = x, down = x;
      up(k) += kStep;
      down(k) -= kStep;
      fd(k) = (f(up) - f(down)) / (2.0 * kStep);
    }
    const double grad_err = (g - fd).norm() / std::max(1.0, g.norm());
    report.max_gradient_error = std::max(report.max_gradient_error, grad_err);
    if (grad_err > kGradTol) ++report.gradient_violations;
  }
  return report;
}

}  // namespace soco
