#include "soco/adversaries.hpp"

#include "soco/offline.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

namespace soco {

namespace {

Point scalar(double x) { return Point::Constant(1, x); }

Instance fixed_instance(std::string family, Point x0, double m, std::vector<HittingCost> costs) {
  const int d = static_cast<int>(x0.size());
  Instance inst{std::move(family), std::move(x0), MovementCost(make_squared_l2_potential(d)), m,
                std::move(costs), {}, std::nullopt};
  return inst;
}

class CircleAdversary final : public AdaptiveAdversary {
 public:
  CircleAdversary(double m, double gamma, double epsilon, double ell0, int T)
      : m_(m), gamma_(gamma), epsilon_(epsilon), ell0_(ell0), T_(T) {}

  int rounds() const override { return T_; }

  HittingCost next(int t, const Point& last) override {
    if (t != ++round_) throw std::logic_error("circle adversary: rounds must be requested in order");
    if (t == 1) {
      comparator_.push_back(last);
      comparator_.push_back(last + Point{{ell0_, 0.0}});
      return make_quadratic(m_, last);
    }
    if (t > 2) close_round(last);

    const Point A = last;
    const Point& D = comparator_.back();
    const double ell = (D - A).norm();
    if (!(ell > 1e-12 * ell0_)) {
      throw std::runtime_error("circle adversary: degenerate geometry, learner coincides with comparator");
    }
    const Point u = (D - A) / ell;
    const Point u_perp{{-u(1), u(0)}};
    const double h = std::sqrt(gamma_ * m_) * ell;
    const double hyp = std::hypot(h, ell);
    const double z = hyp - ell;
    const Point C = A + hyp * u;
    const double cos_phi = h / hyp;
    const double sin_phi = ell / hyp;
    const Point B = A + h * (cos_phi * u + sin_phi * u_perp);
    const double tilt = 10.0 * h * m_ * ell * ell / (epsilon_ * epsilon_);

    pending_B_ = B;
    pending_C_ = C;
    pending_dir_ = (C - B) / (C - B).norm();
    pending_ell_ = ell;
    diag_["ell"].push_back(ell);
    diag_["h"].push_back(h);
    diag_["z"].push_back(z);
    diag_["tilt"].push_back(tilt);
    return make_tilted_quadratic(m_, C, B, C - B, tilt);
  }

  void finish(const Point& last) override {
    if (static_cast<int>(comparator_.size()) == T_ + 1) return;
    if (T_ >= 2) close_round(last);
  }

  const std::vector<Point>& comparator() const override { return comparator_; }

  std::map<std::string, std::vector<double>> diagnostics() const override { return diag_; }

 private:
  // Places the comparator for the round just played on line BC at distance ell
  // from the learner's landed point E.
  void close_round(const Point& E) {
    const Point w = pending_C_ - E;
    const double b = pending_dir_.dot(w);
    const double c = w.squaredNorm() - pending_ell_ * pending_ell_;
    const double disc = b * b - c;
    if (disc < 0.0) {
      throw std::runtime_error("circle adversary: degenerate geometry, no comparator point at distance ell");
    }
    const double root = std::sqrt(disc);
    const double s1 = -b + root;
    const double s2 = -b - root;
    const double s = std::abs(s1) <= std::abs(s2) ? s1 : s2;
    comparator_.push_back(pending_C_ + s * pending_dir_);
    diag_["eb"].push_back((E - pending_B_).norm());
  }

  double m_, gamma_, epsilon_, ell0_;
  int T_;
  int round_ = 0;
  std::vector<Point> comparator_;
  Point pending_B_, pending_C_, pending_dir_;
  double pending_ell_ = 0.0;
  std::map<std::string, std::vector<double>> diag_;
};

}  // namespace

Instance gen_ramp(double m, double m_steep, int n) {
  if (!(m > 0.0) || !(m_steep > 0.0)) throw std::invalid_argument("gen_ramp: m and m_steep must be > 0");
  if (n < 1) throw std::invalid_argument("gen_ramp: n must be >= 1");
  std::vector<HittingCost> costs(n, make_quadratic(m, scalar(0.0)));
  costs.push_back(make_quadratic(m_steep, scalar(1.0)));
  Instance inst = fixed_instance("ramp", scalar(0.0), m, std::move(costs));

  // Backward recursion: x*_k = x*_{k+1} / (a_{k-1} + m + 1), x*_{n+1} = 1.
  const QuadraticChain chain = quadratic_chain(m, n);
  std::vector<Point> comparator(n + 2, scalar(0.0));
  comparator[n + 1] = scalar(1.0);
  for (int k = n; k >= 1; --k) comparator[k] = comparator[k + 1] / (chain.a[k - 1] + m + 1.0);
  inst.comparator = std::move(comparator);
  return inst;
}

double drift_lambda(double m, double gamma) {
  const double r = std::sqrt(gamma * m);
  return r / (1.0 + r);
}

Instance gen_drift(double m, double gamma, double m_steep) {
  if (!(m > 0.0) || !(gamma > 0.0) || !(m_steep > 0.0)) {
    throw std::invalid_argument("gen_drift: m, gamma and m_steep must be > 0");
  }
  if (!(gamma * m < 1.0)) throw std::invalid_argument("gen_drift: gamma * m must be < 1");
  const int n = static_cast<int>(std::ceil(1.0 / drift_lambda(m, gamma)));
  std::vector<HittingCost> costs;
  costs.reserve(n + 1);
  for (int t = 1; t <= n; ++t) costs.push_back(make_quadratic(m, scalar(t)));
  costs.push_back(make_quadratic(2.0 * m_steep, scalar(0.0)));
  Instance inst = fixed_instance("drift", scalar(0.0), m, std::move(costs));
  inst.comparator = std::vector<Point>(n + 2, scalar(0.0));
  return inst;
}

Instance gen_single_step(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("gen_single_step: m must be > 0");
  Instance inst = fixed_instance("single", scalar(0.0), m, {make_quadratic(m, scalar(1.0))});
  inst.comparator = std::vector<Point>(2, scalar(0.0));
  return inst;
}

Instance gen_fixed_point(double m, int T) {
  if (T < 1) throw std::invalid_argument("gen_fixed_point: T must be >= 1");
  std::vector<HittingCost> costs(T, make_piecewise_quasiconvex(m));
  Instance inst = fixed_instance("fixedpoint", scalar(-1.0), m, std::move(costs));
  std::vector<Point> comparator(T + 1, scalar(0.0));
  comparator[0] = scalar(-1.0);
  inst.comparator = std::move(comparator);
  return inst;
}

Instance circle_adversary(double m, double gamma, double tilt_epsilon, double ell0, int T) {
  if (!(m > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("circle_adversary: m and gamma must be > 0");
  if (!(tilt_epsilon > 0.0)) throw std::invalid_argument("circle_adversary: tilt_epsilon must be > 0");
  if (!(ell0 > 0.0)) throw std::invalid_argument("circle_adversary: ell0 must be > 0");
  if (T < 1) throw std::invalid_argument("circle_adversary: T must be >= 1");
  Instance inst{"circle", Point::Zero(2), MovementCost(make_squared_l2_potential(2)), m, {}, {}, std::nullopt};
  inst.adversary = [=] { return std::make_shared<CircleAdversary>(m, gamma, tilt_epsilon, ell0, T); };
  return inst;
}

Instance gen_random_quadratic(double m, int d, int T, std::uint64_t seed) {
  if (!(m > 0.0)) throw std::invalid_argument("gen_random_quadratic: m must be > 0");
  if (d < 1 || T < 1) throw std::invalid_argument("gen_random_quadratic: d and T must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> spread(1.0, 10.0);
  std::vector<HittingCost> costs;
  costs.reserve(T);
  Point v = Point::Zero(d);
  for (int t = 0; t < T; ++t) {
    Matrix G(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) G(i, j) = normal(rng);
    }
    const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
    Point eig(d);
    eig(0) = m;
    for (int i = 1; i < d; ++i) eig(i) = m * spread(rng);
    for (int i = 0; i < d; ++i) v(i) += normal(rng);
    costs.push_back(make_anisotropic_quadratic(Q * eig.asDiagonal() * Q.transpose(), v));
  }
  return fixed_instance("random-quadratic", Point::Zero(d), m, std::move(costs));
}

Instance gen_regret_stream(double m, int T, double amplitude, double noise, std::uint64_t seed) {
  if (!(m > 0.0)) throw std::invalid_argument("gen_regret_stream: m must be > 0");
  if (T < 1) throw std::invalid_argument("gen_regret_stream: T must be >= 1");
  if (!(amplitude >= 0.0) || !(noise >= 0.0)) {
    throw std::invalid_argument("gen_regret_stream: amplitude and noise must be >= 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<HittingCost> costs;
  costs.reserve(T);
  for (int t = 1; t <= T; ++t) {
    const double v = amplitude * std::sin(2.0 * std::numbers::pi * t / T) + noise * uniform(rng);
    costs.push_back(make_quadratic(m, scalar(v)));
  }
  return fixed_instance("regret-stream", scalar(0.0), m, std::move(costs));
}

StreamGeometry stream_geometry(const Instance& inst) {
  if (inst.is_adaptive()) throw std::invalid_argument("stream_geometry: fixed instances only");
  if (!inst.movement.is_squared_l2()) throw std::invalid_argument("stream_geometry: squared-l2 only");
  std::vector<Point> points{Point::Zero(inst.dimension()), inst.x0};
  for (const auto& f : inst.costs) points.push_back(f.minimizer());
  StreamGeometry g;
  for (std::size_t i = 0; i < points.size(); ++i) {
    g.G = std::max(g.G, points[i].norm());
    for (std::size_t j = i + 1; j < points.size(); ++j) g.D = std::max(g.D, (points[i] - points[j]).norm());
  }
  return g;
}

}  // namespace soco
