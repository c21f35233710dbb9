#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lktube/classification.hpp"
#include "lktube/frenet.hpp"
#include "lktube/tube.hpp"

namespace lktube::testing {

constexpr double kTwoPi = 6.283185307179586476925287;

inline std::vector<TubeFamily> all_families() {
  return {TubeFamily::timelike(),       TubeFamily::spacelike(2, 1),
          TubeFamily::spacelike(2, -1), TubeFamily::spacelike(3, 1),
          TubeFamily::spacelike(3, -1), TubeFamily::spacelike(4, 1),
          TubeFamily::spacelike(4, -1)};
}

// the acceptance-scale curvature set: k2 = 0.2, k3 = 0.1
inline TubeSpec test_spec(const TubeFamily& fam,
                          ScalarFunction k1 = ScalarFunction::sinusoid(0.3, 0.1, 1.0),
                          double radius = 0.5) {
  return make_tube(fam, {std::move(k1), ScalarFunction::constant(0.2), ScalarFunction::constant(0.1)},
                   radius, 0.0, kTwoPi);
}

// uniform random point inside the family's default ranges, rejecting points too
// close to the regularity margin or a coordinate degeneracy of the metric
inline GridPoint random_regular_point(const TubeSpec& spec, std::mt19937_64& rng,
                                      double margin_floor = 1e-2, double gg_floor = 1e-6) {
  const GridRanges R = default_ranges(spec.family, 0.0, kTwoPi);
  std::uniform_real_distribution<double> us(R.s0, R.s1), ut(R.t0, R.t1), uw(R.w0, R.w1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const GridPoint p{us(rng), ut(rng), uw(rng)};
    if (std::fabs(regularity_margin(spec, p.s, p.t, p.w)) <= margin_floor) continue;
    if (std::fabs(first_fundamental_form(spec, p.s, p.t, p.w).g_combination()) <= gg_floor) continue;
    return p;
  }
  throw std::runtime_error("random_regular_point: rejection sampling failed");
}

// Analytic timelike unit-speed curve (sqrt2 sinh s, sqrt2 cosh s, cos s, sin s)
// with constant curvatures; the Frenet frame is known in closed form.
struct AnalyticFixture {
  static constexpr double k1 = 1.7320508075688772935;   // sqrt(3)
  static constexpr double k2 = 1.6329931618554520654;   // 2 sqrt(6) / 3
  static constexpr double k3 = 0.57735026918962576451;  // 1 / sqrt(3)

  static Vec4 beta(double s) {
    const double r2 = std::sqrt(2.0);
    return {r2 * std::sinh(s), r2 * std::cosh(s), std::cos(s), std::sin(s)};
  }
  static Vec4 beta_prime(double s) {
    const double r2 = std::sqrt(2.0);
    return {r2 * std::cosh(s), r2 * std::sinh(s), -std::sin(s), std::cos(s)};
  }
  static FrenetFrame frame(double s) {
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    FrenetFrame fr;
    fr.curve_case = CurveCase::TimelikeCenter;
    fr.f[0] = beta_prime(s);
    fr.f[1] = Vec4{r2 * std::sinh(s), r2 * std::cosh(s), -std::cos(s), -std::sin(s)} * (1.0 / r3);
    fr.f[2] = {-std::cosh(s), -std::sinh(s), r2 * std::sin(s), -r2 * std::cos(s)};
    fr.f[3] = Vec4{std::sinh(s), std::cosh(s), r2 * std::cos(s), r2 * std::sin(s)} * (1.0 / r3);
    return fr;
  }
  static CurvatureFunctions curvatures() {
    return {ScalarFunction::constant(k1), ScalarFunction::constant(k2),
            ScalarFunction::constant(k3)};
  }
};

}  // namespace lktube::testing
