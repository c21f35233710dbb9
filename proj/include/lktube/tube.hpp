#pragma once

#include <array>
#include <memory>
#include <string>

#include "lktube/frenet.hpp"
#include "lktube/minkowski.hpp"

namespace lktube {

// One of the seven tube families: the timelike-center tube or a spacelike-center
// family selected by (j, lambda), j in {2,3,4}, lambda = +1 (pseudo hypersphere
// foliation) or -1 (pseudo hyperbolic foliation).
struct TubeFamily {
  enum class Kind { Timelike, Spacelike };
  Kind kind = Kind::Timelike;
  int j = 0;
  int lambda = 0;

  static TubeFamily timelike() { return {}; }
  static TubeFamily spacelike(int j, int lambda);

  CurveCase curve_case() const;
  bool is_timelike() const { return kind == Kind::Timelike; }

  // parity factors evaluated through integer factorials
  int sign4j() const;  // (-1)^{(4-j)!}
  int sign5j() const;  // (-1)^{(5-j)!}
  int parity() const;  // (-1)^j
  int lambda_pow(int p) const;  // lambda^p

  std::string name() const;  // "timelike", "j2+1", "j3-1", ...
  static TubeFamily parse(const std::string& name);

  bool operator==(const TubeFamily& o) const = default;
};

struct TubeSpec {
  std::shared_ptr<const FramedCurve> curve;
  double radius = 1.0;
  TubeFamily family;
  double reg_tol = 1e-3;
  double metric_tol = 1e-9;
};

// Profile functions mu_2, mu_3, mu_4 of the spacelike families (and their
// trigonometric analogue for the timelike family via profile()).
struct MuTriple {
  double mu2 = 0, mu3 = 0, mu4 = 0;
};

MuTriple mu(int j, int lambda, double t, double w);
MuTriple mu_dt(int j, int lambda, double t, double w);
MuTriple mu_dw(int j, int lambda, double t, double w);

// Coefficients of F2..F4 in (tube_point - beta)/r for any family.
MuTriple profile(const TubeFamily& family, double t, double w);
MuTriple profile_dt(const TubeFamily& family, double t, double w);
MuTriple profile_dw(const TubeFamily& family, double t, double w);

// 1 + r k1 cos t cos w (timelike) or 1 + (-1)^{(4-j)!} r k1 mu2 (spacelike).
double regularity_margin(const TubeSpec& spec, double s, double t, double w);

// Frenet components (0, n2, n3, n4) of the closed-form unit normal.
std::array<double, 4> unit_normal_components(const TubeFamily& family, double t, double w);

Vec4 tube_point(const TubeSpec& spec, double s, double t, double w);
Vec4 unit_normal(const TubeSpec& spec, double s, double t, double w);

// First fundamental form coefficients at a surface point.
struct MetricTensor3 {
  double g11 = 0, g12 = 0, g13 = 0, g22 = 0, g23 = 0, g33 = 0;

  // the determinant combination of the gradient formula; equals -det()
  double g_combination() const {
    return g13 * g13 * g22 - 2.0 * g12 * g13 * g23 + g11 * g23 * g23 + g12 * g12 * g33 -
           g11 * g22 * g33;
  }
  double det() const {
    return g11 * (g22 * g33 - g23 * g23) - g12 * (g12 * g33 - g13 * g23) +
           g13 * (g12 * g23 - g22 * g13);
  }
};

MetricTensor3 first_fundamental_form(const TubeSpec& spec, double s, double t, double w);

// (kappa_1, kappa_2, kappa_3) closed forms for the family.
std::array<double, 3> principal_curvatures(const TubeSpec& spec, double s, double t, double w);

// Central-difference tangents (d/ds, d/dt, d/dw) of tube_point, error O(h^2),
// or O(h^4) with Richardson extrapolation over h and h/2.
std::array<Vec4, 3> tangent_basis(const TubeSpec& spec, double s, double t, double w, double h,
                                  bool richardson = false);

// Convenience builder: integrates the family's curve case over
// [s_begin - pad, s_end + pad] from the standard initial frame.
TubeSpec make_tube(const TubeFamily& family, const CurvatureFunctions& curvatures, double radius,
                   double s_begin, double s_end, double step = 1e-3, double pad = 1e-2);

}  // namespace lktube
