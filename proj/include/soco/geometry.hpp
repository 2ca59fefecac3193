#pragma once

// Points, potentials and Bregman divergences.
//
// A Potential h generates the movement cost c(x, y) = D_h(x || y). Two
// potentials are provided: the squared Euclidean norm on R^d and the negative
// entropy on the floored simplex {y : y_i >= delta, sum_i y_i = 1}.

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <variant>

namespace soco {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a point lies outside the domain of a potential or is not finite.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Absolute tolerance on the sum-to-one constraint of the floored simplex.
inline constexpr double kSimplexSumTol = 1e-9;

bool all_finite(const Point& x);
void require_finite(const Point& x, const char* what);

template <typename Derived>
double half_squared_norm(const Eigen::MatrixBase<Derived>& v) {
  return 0.5 * v.squaredNorm();
}

enum class NormId { Euclidean };

struct AllOfRd {};
struct FlooredSimplex {
  double delta;
};
using Domain = std::variant<AllOfRd, FlooredSimplex>;

class Potential {
 public:
  enum class Kind { SquaredL2, NegativeEntropy };

  double value(const Point& x) const;
  Point gradient(const Point& x) const;

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  NormId norm() const { return NormId::Euclidean; }
  const Domain& domain() const { return domain_; }
  bool is_unconstrained() const { return std::holds_alternative<AllOfRd>(domain_); }

  bool contains(const Point& x) const;
  void require_in_domain(const Point& x, const char* what) const;

  /// Euclidean projection onto the domain.
  Point project(const Point& x) const;

  std::string name() const;

 private:
  Potential(Kind kind, int dim, double alpha, double beta, Domain domain)
      : kind_(kind), dim_(dim), alpha_(alpha), beta_(beta), domain_(domain) {}

  friend Potential make_squared_l2_potential(int d);
  friend Potential make_negentropy_potential(int d, double delta);

  Kind kind_;
  int dim_;
  double alpha_;
  double beta_;
  Domain domain_;
};

/// h(x) = 1/2 ||x||^2 on R^d; alpha = beta = 1.
Potential make_squared_l2_potential(int d);

/// h(y) = sum_i y_i ln y_i on the floored simplex, with alpha = 1/(2 ln 2) and
/// beta = 1/(delta ln 2). Requires d >= 2 and 0 < delta < 1/d.
Potential make_negentropy_potential(int d, double delta);

/// D_h(x || y) = h(x) - h(y) - <grad h(y), x - y>.
double bregman(const Potential& p, const Point& x, const Point& y);

/// Movement cost c(x_t, x_{t-1}) = D_h(x_t || x_{t-1}).
class MovementCost {
 public:
  explicit MovementCost(Potential potential) : potential_(std::move(potential)) {}

  double operator()(const Point& to, const Point& from) const {
    return bregman(potential_, to, from);
  }
  const Potential& potential() const { return potential_; }
  bool is_squared_l2() const { return potential_.kind() == Potential::Kind::SquaredL2; }

 private:
  Potential potential_;
};

/// Euclidean projection onto {z : z_i >= 0, sum_i z_i = radius}.
Point project_to_simplex(const Point& x, double radius = 1.0);

}  // namespace soco
