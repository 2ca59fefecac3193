#include "doctest.h"
#include "oracles.hpp"

#include "soco/adversaries.hpp"
#include "soco/algorithms.hpp"
#include "soco/offline.hpp"

#include <Eigen/Eigenvalues>

using namespace soco;

namespace {

void check_costs_valid(const std::vector<HittingCost>& costs, double radius) {
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const CostValidation v = validate_cost(costs[i], 50, radius, i);
    CHECK(v.growth_violations == 0);
    CHECK(v.negativity_violations == 0);
    if (costs[i].smooth()) CHECK(v.gradient_violations == 0);
  }
}

double comparator_round_cost(const RunResult& r, int t) { return r.comparator_hit[t] + r.comparator_move[t]; }

}  // namespace

TEST_CASE("ramp instance") {
  const Instance inst = gen_ramp(0.01, 1e6, 200);
  CHECK(inst.horizon() == 201);
  CHECK(inst.x0(0) == 0.0);
  SolveSettings s;
  const OfflineResult opt = offline_optimal(inst, s);
  const double limit = quadratic_chain(0.01, 200).limit;
  CHECK(limit / 2 == doctest::Approx(0.047563).epsilon(1e-4));
  CHECK(opt.total == doctest::Approx(limit / 2).epsilon(5e-3));
  // The explicit comparator is the m' -> infinity optimum.
  const double cmp = trajectory_cost(inst.costs, inst.movement, *inst.comparator);
  CHECK(cmp == doctest::Approx(quadratic_chain(0.01, 200).a[200] / 2).epsilon(1e-6));
  CHECK(opt.total <= cmp + 1e-9);

  const RunResult follow = run(AlgoConfig{FollowMinimizer{}, {}}, inst);
  for (int t = 0; t < 200; ++t) CHECK(follow.hit[t] == 0.0);
  check_costs_valid(inst.costs, 2.0);
}

TEST_CASE("single steep round after staying put") {
  // Staying at 0 and then taking the best single step costs at least 1/(2(1 + 1/m')).
  for (double mp : {10.0, 1e4, 1e6}) {
    const Instance inst = gen_ramp(0.05, mp, 3);
    const RunResult r = run(AlgoConfig{Robd{1.0, 0.0}, {}}, inst);
    CHECK(r.move.back() + r.hit.back() >= 1.0 / (2.0 * (1.0 + 1.0 / mp)) - 1e-12);
  }
}

TEST_CASE("drift instance") {
  CHECK(drift_lambda(0.01, 1.0) == doctest::Approx(0.1 / 1.1));
  const Instance inst = gen_drift(0.01, 1.0, 1e6);
  CHECK(inst.horizon() == 12);
  const int n = 11;
  const RunResult obd = run(AlgoConfig{Obd{1.0}, {}}, inst);
  double cmp_drift = 0.0;
  for (int t = 0; t < n; ++t) cmp_drift += comparator_round_cost(obd, t);
  CHECK(cmp_drift <= 0.01 / 2 * n * (n + 1) * (2 * n + 1) / 6.0 + 1e-12);
  CHECK(obd.comparator_total == doctest::Approx(cmp_drift));

  const double m = 0.001;
  const double lambda = drift_lambda(m, 1.0);
  REQUIRE(lambda <= 0.05);
  const Instance slow = gen_drift(m, 1.0, 1e6);
  const RunResult r = run(AlgoConfig{Obd{1.0}, {}}, slow);
  const int ns = slow.horizon() - 1;
  CHECK(r.trajectory[ns](0) >= 1.0 / (6.0 * lambda));
  CHECK_THROWS_AS(gen_drift(1.0, 1.0, 1e6), std::invalid_argument);
  check_costs_valid(inst.costs, 3.0);
}

TEST_CASE("single-step instance") {
  SolveSettings s;
  for (double m : {0.01, 0.2}) {
    const Instance inst = gen_single_step(m);
    const RunResult stay = run(AlgoConfig{StayPut{}, s}, inst);
    CHECK(stay.comparator_total == doctest::Approx(m / 2));
    for (double gamma : {0.5, 1.0, 3.0}) {
      const RunResult r = run(AlgoConfig{Obd{gamma}, s}, inst);
      const double q = std::sqrt(gamma * m) / (1 + std::sqrt(gamma * m));
      CHECK(r.move[0] == doctest::Approx(0.5 * q * q).epsilon(1e-8));
    }
    const RunResult robd = run(AlgoConfig{Robd{0.7, 0.0}, s}, inst);
    CHECK(robd.trajectory[1](0) == doctest::Approx(m / (m + 0.7)));
    check_costs_valid(inst.costs, 2.0);
  }
}

TEST_CASE("fixed-point instance") {
  const double m = 0.1;
  const Instance inst = gen_fixed_point(m, 50);
  CHECK(inst.x0(0) == -1.0);
  const RunResult r = run(AlgoConfig{Robd{0.5, 0.0}, {}}, inst);
  for (const Point& x : r.trajectory) CHECK(x(0) == -1.0);
  for (double h : r.hit) CHECK(h == doctest::Approx(m / 2));
  CHECK(r.comparator_total == doctest::Approx(0.5));
  CHECK(r.comparator_move[0] == doctest::Approx(0.5));
  check_costs_valid(inst.costs, 2.0);
}

TEST_CASE("circle adversary against OBD") {
  const double m = 0.04, gamma = 1.0, eps = 1e-3, ell = 1.0;
  const Instance inst = circle_adversary(m, gamma, eps, ell, 40);
  CHECK(inst.is_adaptive());
  const RunResult r = run(AlgoConfig{Obd{gamma}, {}}, inst);
  REQUIRE(r.completed);
  REQUIRE(r.comparator.size() == r.trajectory.size());

  CHECK(comparator_round_cost(r, 0) == doctest::Approx(0.5 * ell * ell + m / 2 * ell * ell));

  const auto diag = r.adversary->diagnostics();
  for (double eb : diag.at("eb")) CHECK(eb < eps);
  for (std::size_t t = 1; t < r.trajectory.size(); ++t) {
    CHECK(std::abs((r.trajectory[t] - r.comparator[t]).norm() - ell) <= 2 * eps);
  }
  const double h = std::sqrt(gamma * m) * ell;
  const double z = std::hypot(h, ell) - ell;
  for (int t = 1; t < r.rounds(); ++t) {
    CHECK(comparator_round_cost(r, t) <= 0.5 * (z + eps) * (z + eps) + m * eps * eps / 2);
    CHECK((r.hit[t] + r.move[t]) / comparator_round_cost(r, t) >= 0.8 * 2 / (gamma * m));
  }
  check_costs_valid(r.costs, 2.0);
}

TEST_CASE("circle adversary is deterministic and per-run") {
  const Instance inst = circle_adversary(0.04, 1.0, 1e-3, 1.0, 15);
  const RunResult a = run(AlgoConfig{Obd{1.0}, {}}, inst);
  const RunResult b = run(AlgoConfig{Obd{1.0}, {}}, inst);
  CHECK(a.total == b.total);
  CHECK(a.comparator_total == b.comparator_total);
  auto adv = inst.adversary();
  CHECK_THROWS_AS(adv->next(2, Point::Zero(2)), std::logic_error);
}

TEST_CASE("random quadratic streams") {
  const Instance a = gen_random_quadratic(0.05, 3, 20, 7);
  const Instance b = gen_random_quadratic(0.05, 3, 20, 7);
  const Instance c = gen_random_quadratic(0.05, 3, 20, 8);
  CHECK(a.horizon() == 20);
  for (int t = 0; t < 20; ++t) {
    CHECK(a.costs[t].m() == doctest::Approx(0.05).epsilon(1e-12));
    CHECK((a.costs[t].minimizer() - b.costs[t].minimizer()).norm() == 0.0);
    const Point x = Point::Ones(3);
    CHECK(a.costs[t](x) == b.costs[t](x));
    CHECK(a.costs[t].hessian(x).selfadjointView<Eigen::Upper>().operatorNorm() <= 10 * 0.05 * (1 + 1e-12));
  }
  CHECK((a.costs[5].minimizer() - c.costs[5].minimizer()).norm() > 0.0);
  check_costs_valid(a.costs, 2.0);
}

TEST_CASE("regret streams and their geometry") {
  const Instance inst = gen_regret_stream(1.0, 50, 2.0, 1.0, 3);
  CHECK(inst.horizon() == 50);
  for (const auto& f : inst.costs) {
    CHECK(std::abs(f.minimizer()(0)) <= 3.0);
  }
  const StreamGeometry g = stream_geometry(inst);
  CHECK(g.D > 0.0);
  CHECK(g.D <= 6.0);
  // The hull contains the origin, so max ||x|| never exceeds the diameter.
  CHECK(g.G > 0.0);
  CHECK(g.G <= g.D);
  check_costs_valid(inst.costs, 2.0);
}
