#pragma once

// Instance generators: the lower-bound constructions and seeded random streams.

#include "soco/instance.hpp"

#include <cstdint>

namespace soco {

/// n rounds of (m/2) x^2 followed by one round of (m_steep/2)(x - 1)^2, from x0 = 0.
/// The comparator is the optimal trajectory of the chain in the m_steep -> infinity limit.
Instance gen_ramp(double m, double m_steep, int n);

/// n = ceil(1/lambda) rounds of (m/2)(x - t)^2, lambda = sqrt(gamma m) / (1 + sqrt(gamma m)),
/// then m_steep x^2. The comparator stays at 0. Requires gamma m < 1.
Instance gen_drift(double m, double gamma, double m_steep);

/// lambda = sqrt(gamma m) / (1 + sqrt(gamma m)).
double drift_lambda(double m, double gamma);

/// One round of (m/2)(1 - x)^2 from x0 = 0; the comparator stays at 0.
Instance gen_single_step(double m);

/// T copies of make_piecewise_quasiconvex(m) from x0 = -1; the comparator jumps to 0.
Instance gen_fixed_point(double m, int T);

/// Adaptive planar construction against OBD with balance parameter gamma.
/// Round 1 plays (m/2)||x||^2 and the comparator moves to (ell0, 0). Each later
/// round builds a right triangle on the learner's point and emits a tilted
/// quadratic whose tilt is 10 h m ell^2 / tilt_epsilon^2.
Instance circle_adversary(double m, double gamma, double tilt_epsilon, double ell0, int T);

/// T rounds of d-dimensional quadratics with smallest curvature exactly m and
/// largest at most 10 m, random orientation, and minimizers on a Gaussian random walk.
Instance gen_random_quadratic(double m, int d, int T, std::uint64_t seed);

/// One-dimensional quadratics (m/2)(x - v_t)^2 with
/// v_t = amplitude sin(2 pi t / T) + noise_t, noise_t uniform on [-noise, noise].
Instance gen_regret_stream(double m, int T, double amplitude, double noise, std::uint64_t seed);

/// Bound G on ||grad h|| and diameter D of the hull of {0, x0, v_1..v_T}, squared-l2 only.
struct StreamGeometry {
  double G = 0.0;
  double D = 0.0;
};
StreamGeometry stream_geometry(const Instance& inst);

}  // namespace soco
