#pragma once

// A game instance: starting point, movement cost, and either a fixed cost
// sequence or an adaptive adversary that reacts to the learner's last point.

#include "soco/costs.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace soco {

/// Per-run adversary state. A fresh object is created for every run.
class AdaptiveAdversary {
 public:
  virtual ~AdaptiveAdversary() = default;

  virtual int rounds() const = 0;
  /// Cost for round t (1-based) after observing the learner's point x_{t-1}.
  virtual HittingCost next(int t, const Point& last) = 0;
  /// Observes the final point x_T.
  virtual void finish(const Point& last) = 0;
  /// Comparator trajectory x*_0..x*_k for the rounds finalized so far.
  virtual const std::vector<Point>& comparator() const = 0;
  /// Named scalar diagnostics recorded during the run.
  virtual std::map<std::string, std::vector<double>> diagnostics() const { return {}; }
};

using AdversaryFactory = std::function<std::shared_ptr<AdaptiveAdversary>()>;

struct Instance {
  std::string family;
  Point x0;
  MovementCost movement;
  /// Curvature parameter m the instance was built for (handed to G-OBD).
  double declared_m = 0.0;
  std::vector<HittingCost> costs;
  AdversaryFactory adversary;
  /// Explicit comparator x*_0..x*_T for fixed instances.
  std::optional<std::vector<Point>> comparator;

  bool is_adaptive() const { return static_cast<bool>(adversary); }
  int dimension() const { return static_cast<int>(x0.size()); }
  int horizon() const;
  void validate() const;
};

/// Total cost of a trajectory x_0..x_T against the given costs.
double trajectory_cost(const std::vector<HittingCost>& costs, const MovementCost& movement,
                       const std::vector<Point>& trajectory);

}  // namespace soco
