#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace lktube {

// Scalar function of arclength (a curvature k_i(s)) together with its derivative.
// Presets supply the derivative analytically; `sampled` falls back to a central
// difference with step 1e-5.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;

  ScalarFunction() : ScalarFunction(zero()) {}

  static ScalarFunction zero();
  static ScalarFunction constant(double value);
  // offset + amplitude * sin(omega * s)
  static ScalarFunction sinusoid(double offset, double amplitude, double omega);
  // natural cubic spline through (s_i, value_i); clamps outside the table range
  static ScalarFunction table(std::vector<double> s, std::vector<double> values);
  static ScalarFunction analytic(Fn f, Fn df);
  static ScalarFunction sampled(Fn f);

  double operator()(double s) const { return f_(s); }
  double derivative(double s) const { return df_(s); }

 private:
  ScalarFunction(Fn f, Fn df) : f_(std::move(f)), df_(std::move(df)) {}
  Fn f_, df_;
};

struct CurvatureFunctions {
  ScalarFunction k1, k2, k3;
};

}  // namespace lktube
