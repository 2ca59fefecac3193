#pragma once

// Hitting costs f_t behind a single immutable descriptor.

#include "soco/geometry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace soco {

enum class CostKind { StronglyConvex, QuasiconvexGrowth };

class HittingCost {
 public:
  using Eval = std::function<double(const Point&)>;
  using Grad = std::function<Point(const Point&)>;
  using Hessian = std::function<Matrix(const Point&)>;
  /// argmin_x f(x) + (weight/2) ||x - center||^2, when known in closed form.
  using Prox = std::function<Point(const Point& center, double weight)>;

  struct Parts {
    std::string label;
    Eval eval;
    Grad grad;
    Hessian hessian;  // optional
    Prox prox;        // optional
    Point minimizer;
    double min_value = 0.0;
    double m = 0.0;
    CostKind kind = CostKind::StronglyConvex;
    bool smooth = true;
  };

  explicit HittingCost(Parts parts);

  double operator()(const Point& x) const { return parts_->eval(x); }
  Point gradient(const Point& x) const { return parts_->grad(x); }

  bool has_hessian() const { return static_cast<bool>(parts_->hessian); }
  Matrix hessian(const Point& x) const { return parts_->hessian(x); }
  bool has_prox() const { return static_cast<bool>(parts_->prox); }
  Point prox(const Point& center, double weight) const { return parts_->prox(center, weight); }

  const Point& minimizer() const { return parts_->minimizer; }
  double min_value() const { return parts_->min_value; }
  double m() const { return parts_->m; }
  CostKind kind() const { return parts_->kind; }
  bool smooth() const { return parts_->smooth; }
  int dimension() const { return static_cast<int>(parts_->minimizer.size()); }
  const std::string& label() const { return parts_->label; }

  /// Same function with a different declared curvature. Used for negative controls.
  HittingCost with_curvature(double m) const;
  /// Same function with the closed-form operators removed, forcing generic solver paths.
  HittingCost black_box() const;

 private:
  std::shared_ptr<const Parts> parts_;
};

/// (m/2) ||x - v||^2 + offset.
HittingCost make_quadratic(double m, const Point& v, double offset = 0.0);

/// (1/2) (x - v)^T Q (x - v) + offset with Q symmetric positive definite; m = lambda_min(Q).
HittingCost make_anisotropic_quadratic(const Matrix& Q, const Point& v, double offset = 0.0);

/// (m/2) ||u - center||^2 + tilt * dist(u, line) in the plane. The center must lie on the line.
/// On the line the returned subgradient has no distance-term contribution.
HittingCost make_tilted_quadratic(double m, const Point& center, const Point& line_point,
                                  const Point& line_dir, double tilt);

/// 1-d quasiconvex cost: (m/2)(1 - (x+1)^2) on [-1, 0], (m/2) x^2 elsewhere.
HittingCost make_piecewise_quasiconvex(double m);

struct CostValidation {
  int samples = 0;
  double max_growth_violation = 0.0;
  double max_negativity = 0.0;
  double max_gradient_error = 0.0;
  double minimizer_mismatch = 0.0;
  int growth_violations = 0;
  int negativity_violations = 0;
  int gradient_violations = 0;

  int total_violations() const {
    return growth_violations + negativity_violations + gradient_violations +
           (minimizer_mismatch > 1e-9 ? 1 : 0);
  }
};

/// Seeded sampling in a ball around the minimizer. Growth and nonnegativity use
/// tolerance `tol` relative to max(1, |f(x)|); gradients are compared against
/// central differences with step 1e-6 at relative tolerance 1e-5.
CostValidation validate_cost(const HittingCost& f, int n_samples, double radius,
                             std::uint64_t seed, double tol = 1e-8);

}  // namespace soco
