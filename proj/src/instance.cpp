#include "soco/instance.hpp"

#include <stdexcept>

namespace soco {

int Instance::horizon() const {
  if (is_adaptive()) return adversary()->rounds();
  return static_cast<int>(costs.size());
}

void Instance::validate() const {
  if (x0.size() < 1) throw std::invalid_argument("instance: empty starting point");
  if (x0.size() != movement.potential().dimension()) {
    throw std::invalid_argument("instance: starting point and movement cost dimensions differ");
  }
  movement.potential().require_in_domain(x0, "instance x0");
  if (!(declared_m >= 0.0)) throw std::invalid_argument("instance: declared_m must be >= 0");
  if (is_adaptive()) {
    if (!costs.empty()) throw std::invalid_argument("instance: adaptive instances carry no fixed costs");
    return;
  }
  if (costs.empty()) throw std::invalid_argument("instance: no costs");
  for (const auto& f : costs) {
    if (f.dimension() != dimension()) throw std::invalid_argument("instance: cost dimension mismatch");
  }
  if (comparator && comparator->size() != costs.size() + 1) {
    throw std::invalid_argument("instance: comparator must hold T + 1 points");
  }
}

double trajectory_cost(const std::vector<HittingCost>& costs, const MovementCost& movement,
                       const std::vector<Point>& trajectory) {
  if (trajectory.size() != costs.size() + 1) {
    throw std::invalid_argument("trajectory_cost: trajectory must hold T + 1 points");
  }
  double total = 0.0;
  for (std::size_t t = 1; t < trajectory.size(); ++t) {
    total += costs[t - 1](trajectory[t]) + movement(trajectory[t], trajectory[t - 1]);
  }
  return total;
}

}  // namespace soco
