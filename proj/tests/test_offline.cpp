#include "doctest.h"
#include "oracles.hpp"

#include "soco/adversaries.hpp"
#include "soco/algorithms.hpp"
#include "soco/offline.hpp"

#include <random>

using namespace soco;

namespace {

Instance fixed_1d(std::vector<HittingCost> costs, double x0 = 0.0) {
  return Instance{.family = "test",
                  .x0 = Point::Constant(1, x0),
                  .movement = MovementCost(make_squared_l2_potential(1)),
                  .costs = std::move(costs)};
}

}  // namespace

TEST_CASE("one round is the proximal point") {
  SolveSettings s;
  for (double m : {0.1, 1.0, 5.0}) {
    const Instance inst = fixed_1d({make_quadratic(m, Point::Ones(1))});
    const OfflineResult r = offline_optimal(inst, s);
    CHECK(r.converged);
    CHECK(r.trajectory[1](0) == doctest::Approx(m / (m + 1)).epsilon(1e-10));
    const OfflineResult g = grid_oracle_1d(inst, -0.5, 1.5, 400);
    CHECK(std::abs(g.total - r.total) <= 1e-4);
  }
}

TEST_CASE("minimizers at the start point give a constant trajectory") {
  SolveSettings s;
  const Instance inst = fixed_1d({make_quadratic(1.0, Point::Constant(1, 2.0), 0.5),
                                  make_quadratic(3.0, Point::Constant(1, 2.0), 0.25)},
                                 2.0);
  const OfflineResult r = offline_optimal(inst, s);
  for (const Point& x : r.trajectory) CHECK(x(0) == doctest::Approx(2.0));
  CHECK(r.total == doctest::Approx(0.75));
}

TEST_CASE("quadratic chain") {
  const QuadraticChain q4 = quadratic_chain(4.0, 10);
  CHECK(q4.a[0] == 1.0);
  CHECK(q4.limit == doctest::Approx(-2.0 + 2.0 * std::sqrt(2.0)));
  CHECK(q4.limit == doctest::Approx(0.82843).epsilon(1e-5));
  const QuadraticChain q = quadratic_chain(0.01, 200);
  CHECK(q.limit == doctest::Approx(0.095125).epsilon(1e-5));
  CHECK(std::abs(q.a[200] - q.limit) <= 1e-3);
  CHECK(q.a[200] == doctest::Approx(oracle::chain_term(0.01, 200)).epsilon(1e-12));
  for (double m : {0.01, 0.3, 4.0}) {
    const QuadraticChain c = quadratic_chain(m, 300);
    for (int k = 0; k < 300; ++k) {
      CHECK(c.a[k + 1] <= c.a[k]);
      CHECK(c.a[k + 1] >= c.limit - 1e-15);
    }
  }
}

TEST_CASE("offline optimum on the ramp matches the chain") {
  SolveSettings s;
  const double m = 0.04;
  const int n = 50;
  const Instance inst = gen_ramp(m, 1e6, n);
  const OfflineResult r = offline_optimal(inst, s);
  CHECK(r.converged);
  // The chain value a_n/2 is the m' -> infinity limit; m' = 1e6 shifts it by O(1/m').
  CHECK(r.total == doctest::Approx(quadratic_chain(m, n).a[n] / 2).epsilon(1e-4));
  CHECK(r.residual <= s.grad_tol * std::sqrt(n + 1.0));
}

TEST_CASE("offline optimum is a lower bound for online runs") {
  SolveSettings s;
  const Instance inst = gen_random_quadratic(0.2, 2, 30, 5);
  const OfflineResult opt = offline_optimal(inst, s);
  CHECK(opt.converged);
  for (const Algorithm& a : {Algorithm{Obd{1.0}}, Algorithm{Robd{0.7, 0.0}}, Algorithm{StayPut{}},
                             Algorithm{FollowMinimizer{}}}) {
    CHECK(opt.total <= run(AlgoConfig{a, s}, inst).total + 2 * s.grad_tol * 30);
  }
}

TEST_CASE("offline optimum with a black-box cost") {
  SolveSettings s;
  Instance inst = gen_random_quadratic(0.5, 2, 6, 12);
  const OfflineResult a = offline_optimal(inst, s);
  for (auto& c : inst.costs) c = c.black_box();
  const OfflineResult b = offline_optimal(inst, s);
  CHECK(b.converged);
  CHECK(b.total == doctest::Approx(a.total).epsilon(1e-8));
}

TEST_CASE("offline optimum rejects unsupported instances") {
  SolveSettings s;
  CHECK_THROWS_AS(offline_optimal(gen_fixed_point(0.1, 5), s), std::invalid_argument);
  CHECK_THROWS_AS(offline_optimal(circle_adversary(0.04, 1.0, 1e-3, 1.0, 5), s), std::invalid_argument);
}

TEST_CASE("movement-budgeted optimum") {
  SolveSettings s;
  const Instance inst = gen_ramp(0.1, 100.0, 8);
  const OfflineResult free = offline_optimal(inst, s);

  const OfflineResult zero = l_constrained_optimal(inst, 0.0, s);
  double stay = 0.0;
  for (const auto& f : inst.costs) stay += f(inst.x0);
  CHECK(zero.total == doctest::Approx(stay));
  CHECK(zero.movement_total == 0.0);

  const OfflineResult loose = l_constrained_optimal(inst, 2.0 * free.movement_total, s);
  CHECK(loose.total == doctest::Approx(free.total).epsilon(1e-9));

  double last = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 5; ++i) {
    const double L = free.movement_total * i / 6.0;
    const OfflineResult r = l_constrained_optimal(inst, L, s);
    CHECK(r.converged);
    CHECK(r.movement_total <= L * (1 + 1e-6));
    CHECK(r.total <= last + 1e-12);
    CHECK(r.total >= free.total - 1e-12);
    last = r.total;
  }
  CHECK_THROWS_AS(l_constrained_optimal(inst, -1.0, s), std::invalid_argument);
}

TEST_CASE("grid oracle") {
  SolveSettings s;
  const Instance ramp = gen_ramp(0.5, 100.0, 2);
  const OfflineResult cont = offline_optimal(ramp, s);
  const OfflineResult grid = grid_oracle_1d(ramp, -0.5, 1.5, 400);
  CHECK(std::abs(grid.total - cont.total) <= 1e-2 * cont.total);
  CHECK(grid.total >= cont.total - 1e-12);
  CHECK_FALSE(grid.on_boundary);

  const OfflineResult single = grid_oracle_1d(ramp, 0.0, 0.0, 1);
  double stay = 0.0;
  for (const auto& f : ramp.costs) stay += f(ramp.x0);
  CHECK(single.total == doctest::Approx(stay));

  // The optimum sits near 1 in the last round, outside [-1, 0.5].
  CHECK(grid_oracle_1d(ramp, -1.0, 0.5, 100).on_boundary);
  CHECK_THROWS_AS(grid_oracle_1d(ramp, 0.0, 1.0, 401), std::invalid_argument);
  CHECK_THROWS_AS(grid_oracle_1d(gen_random_quadratic(0.1, 2, 3, 0), 0.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("offline matches the grid oracle on random 1-d instances") {
  SolveSettings s;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> cm(0.2, 3.0);
  for (int k = 0; k < 5; ++k) {
    std::vector<HittingCost> costs;
    for (int t = 0; t < 4; ++t) costs.push_back(make_quadratic(cm(rng), Point::Constant(1, u(rng))));
    const Instance inst = fixed_1d(costs);
    const OfflineResult a = offline_optimal(inst, s);
    const OfflineResult b = grid_oracle_1d(inst, -1.5, 1.5, 400);
    CHECK(std::abs(a.total - b.total) <= 1e-2 * a.total);
  }
}
