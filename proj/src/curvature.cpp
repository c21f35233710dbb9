#include "lktube/curvature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lktube {

ScalarFunction ScalarFunction::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

ScalarFunction ScalarFunction::constant(double value) {
  return {[value](double) { return value; }, [](double) { return 0.0; }};
}

ScalarFunction ScalarFunction::sinusoid(double offset, double amplitude, double omega) {
  return {[=](double s) { return offset + amplitude * std::sin(omega * s); },
          [=](double s) { return amplitude * omega * std::cos(omega * s); }};
}

namespace {

struct Spline {
  gsl_spline* spline = nullptr;
  gsl_interp_accel* accel = nullptr;
  double s_min = 0.0, s_max = 0.0;

  Spline(const std::vector<double>& s, const std::vector<double>& v) {
    spline = gsl_spline_alloc(gsl_interp_cspline, s.size());
    accel = gsl_interp_accel_alloc();
    if (spline == nullptr || accel == nullptr) throw std::bad_alloc();
    if (gsl_spline_init(spline, s.data(), v.data(), s.size()) != GSL_SUCCESS)
      throw std::invalid_argument("spline init failed (abscissae must be strictly increasing)");
    s_min = s.front();
    s_max = s.back();
  }
  ~Spline() {
    if (spline != nullptr) gsl_spline_free(spline);
    if (accel != nullptr) gsl_interp_accel_free(accel);
  }
  Spline(const Spline&) = delete;
  Spline& operator=(const Spline&) = delete;

  double clamp(double s) const { return std::clamp(s, s_min, s_max); }
};

}  // namespace

ScalarFunction ScalarFunction::table(std::vector<double> s, std::vector<double> values) {
  if (s.size() != values.size()) throw std::invalid_argument("curvature table: size mismatch");
  if (s.size() < 3) throw std::invalid_argument("curvature table: need at least 3 samples");
  if (!std::is_sorted(s.begin(), s.end())) throw std::invalid_argument("curvature table: abscissae not sorted");
  gsl_set_error_handler_off();
  auto sp = std::make_shared<Spline>(s, values);
  return {[sp](double x) { return gsl_spline_eval(sp->spline, sp->clamp(x), sp->accel); },
          [sp](double x) { return gsl_spline_eval_deriv(sp->spline, sp->clamp(x), sp->accel); }};
}

ScalarFunction ScalarFunction::analytic(Fn f, Fn df) { return {std::move(f), std::move(df)}; }

ScalarFunction ScalarFunction::sampled(Fn f) {
  constexpr double h = 1e-5;
  Fn df = [f](double s) { return (f(s + h) - f(s - h)) / (2.0 * h); };
  return {std::move(f), std::move(df)};
}

}  // namespace lktube
