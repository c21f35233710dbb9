#pragma once

#include <array>

#include "lktube/tube.hpp"

namespace lktube {

// Signed elementary symmetric functions of the principal curvatures:
// a1 = -(k1+k2+k3), a2 = k1 k2 + k1 k3 + k2 k3, a3 = -k1 k2 k3.
struct SymmetricFunctions {
  double a1 = 0, a2 = 0, a3 = 0;
};

SymmetricFunctions symmetric_functions(const std::array<double, 3>& kappa);

// k-th mean curvatures from C(3,k) H_k = (-eps)^k a_k; H4 = 0 by convention.
struct MeanCurvatures {
  double h1 = 0, h2 = 0, h3 = 0;
  double eps = 1.0;
};

MeanCurvatures mean_curvatures(const SymmetricFunctions& a, double eps);

// C(3,k+1) (-eps)^k for k in {1,2}.
double ck_constant(int k, double eps);

// Coefficients (of d/ds, d/dt, d/dw) of the on-surface gradient given the
// partial derivatives of f. Throws DegenerateMetric when |g_combination| <= metric_tol.
std::array<double, 3> gradient_on_M(const std::array<double, 3>& f_partials, const MetricTensor3& g,
                                    double metric_tol = 1e-9);

struct LkResult {
  std::array<double, 4> frenet{};  // components on F1..F4
  Vec4 ambient;
  int k = 1;
  double s = 0, t = 0, w = 0;
};

// L_k of the Gauss map via the generic operator pipeline: H_{k+1} from the
// closed-form principal curvatures on an FD stencil, its gradient through the
// metric, the scalar N-term with n = 3 and H4 = 0, scaled by -eps C_k.
LkResult lk_gauss_map_numeric(const TubeSpec& spec, int k, double s, double t, double w,
                              double h = 1e-5, bool richardson = true);

// The printed closed forms, per family.
LkResult l1_closed_form(const TubeSpec& spec, double s, double t, double w);
LkResult l2_closed_form(const TubeSpec& spec, double s, double t, double w);
LkResult lk_closed_form(const TubeSpec& spec, int k, double s, double t, double w);

// Closed-form on-surface gradients of a2 and a3 (timelike family only).
Vec4 grad_a2_closed_form(const TubeSpec& spec, double s, double t, double w);
Vec4 grad_a3_closed_form(const TubeSpec& spec, double s, double t, double w);

// <N,N> snapped to +-1; validates the normal is unit to 1e-6.
double surface_epsilon(const TubeSpec& spec, double s, double t, double w);

}  // namespace lktube
