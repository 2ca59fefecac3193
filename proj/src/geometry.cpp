#include "soco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace soco {

bool all_finite(const Point& x) { return x.allFinite(); }

void require_finite(const Point& x, const char* what) {
  if (!x.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite coordinate");
  }
}

Potential make_squared_l2_potential(int d) {
  if (d < 1) throw std::invalid_argument("squared-l2 potential: dimension must be >= 1");
  return Potential(Potential::Kind::SquaredL2, d, 1.0, 1.0, AllOfRd{});
}

Potential make_negentropy_potential(int d, double delta) {
  if (d < 2) throw std::invalid_argument("negentropy potential: dimension must be >= 2");
  if (!(delta > 0.0) || !(delta < 1.0 / d)) {
    throw std::invalid_argument("negentropy potential: delta must lie in (0, 1/d)");
  }
  const double ln2 = std::numbers::ln2;
  return Potential(Potential::Kind::NegativeEntropy, d, 1.0 / (2.0 * ln2), 1.0 / (delta * ln2),
                   FlooredSimplex{delta});
}

bool Potential::contains(const Point& x) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  if (const auto* s = std::get_if<FlooredSimplex>(&domain_)) {
    // Coordinates may sit on the floor up to rounding.
    if (x.minCoeff() < s->delta - kSimplexSumTol) return false;
    if (std::abs(x.sum() - 1.0) > kSimplexSumTol) return false;
  }
  return true;
}

void Potential::require_in_domain(const Point& x, const char* what) const {
  if (x.size() != dim_) {
    throw DomainError(std::string(what) + ": dimension mismatch (expected " +
                      std::to_string(dim_) + ", got " + std::to_string(x.size()) + ")");
  }
  require_finite(x, what);
  if (!contains(x)) {
    throw DomainError(std::string(what) + ": point outside " + name() + " domain");
  }
}

double Potential::value(const Point& x) const {
  require_in_domain(x, "potential value");
  if (kind_ == Kind::SquaredL2) return half_squared_norm(x);
  return (x.array() * x.array().log()).sum();
}

Point Potential::gradient(const Point& x) const {
  require_in_domain(x, "potential gradient");
  if (kind_ == Kind::SquaredL2) return x;
  return (x.array().log() + 1.0).matrix();
}

Point Potential::project(const Point& x) const {
  require_finite(x, "potential projection");
  if (const auto* s = std::get_if<FlooredSimplex>(&domain_)) {
    const double slack = 1.0 - dim_ * s->delta;
    return (project_to_simplex(x.array() - s->delta, slack).array() + s->delta).matrix();
  }
  return x;
}

std::string Potential::name() const {
  if (kind_ == Kind::SquaredL2) return "squared-l2";
  return "negentropy(delta=" + std::to_string(std::get<FlooredSimplex>(domain_).delta) + ")";
}

double bregman(const Potential& p, const Point& x, const Point& y) {
  p.require_in_domain(x, "bregman x");
  p.require_in_domain(y, "bregman y");
  if (p.kind() == Potential::Kind::SquaredL2) return half_squared_norm(x - y);
  // h(x) - h(y) - <ln y + 1, x - y> rearranged to avoid cancellation.
  return (x.array() * (x.array() / y.array()).log() - x.array() + y.array()).sum();
}

Point project_to_simplex(const Point& x, double radius) {
  const auto n = x.size();
  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) threshold = candidate;
  }
  return (x.array() - threshold).max(0.0).matrix();
}

}  // namespace soco
