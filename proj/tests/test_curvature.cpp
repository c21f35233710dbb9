#include <doctest.h>

#include <cmath>

#include "lktube/curvature.hpp"

using namespace lktube;

TEST_CASE("preset values and analytic derivatives") {
  const ScalarFunction z = ScalarFunction::zero();
  CHECK(z(1.7) == 0.0);
  CHECK(z.derivative(1.7) == 0.0);

  const ScalarFunction c = ScalarFunction::constant(0.3);
  CHECK(c(-2.0) == 0.3);
  CHECK(c.derivative(5.0) == 0.0);

  const ScalarFunction s = ScalarFunction::sinusoid(0.3, 0.1, 2.0);
  CHECK(s(0.7) == doctest::Approx(0.3 + 0.1 * std::sin(1.4)).epsilon(1e-15));
  CHECK(s.derivative(0.7) == doctest::Approx(0.2 * std::cos(1.4)).epsilon(1e-15));
}

TEST_CASE("table preset interpolates with a natural cubic spline") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 64; ++i) {
    const double x = -0.5 + 7.5 * i / 64.0;
    xs.push_back(x);
    ys.push_back(0.3 + 0.1 * std::sin(x));
  }
  const ScalarFunction f = ScalarFunction::table(xs, ys);
  for (double x : {0.3, 1.1, 2.9, 5.5}) {
    CHECK(f(x) == doctest::Approx(0.3 + 0.1 * std::sin(x)).epsilon(1e-6));
    CHECK(f.derivative(x) == doctest::Approx(0.1 * std::cos(x)).epsilon(1e-4));
  }
  // clamps outside the table
  CHECK(f(-3.0) == doctest::Approx(f(-0.5)).epsilon(1e-14));
}

TEST_CASE("table preset rejects bad input") {
  CHECK_THROWS(ScalarFunction::table({0.0, 1.0}, {1.0, 2.0}));          // too short
  CHECK_THROWS(ScalarFunction::table({0.0, 2.0, 1.0}, {1, 2, 3}));      // unsorted
  CHECK_THROWS(ScalarFunction::table({0.0, 1.0, 2.0}, {1.0, 2.0}));     // size mismatch
}

TEST_CASE("sampled functions fall back to central differences") {
  const ScalarFunction f = ScalarFunction::sampled([](double s) { return s * s * s; });
  CHECK(f(2.0) == 8.0);
  CHECK(f.derivative(2.0) == doctest::Approx(12.0).epsilon(1e-8));
}
