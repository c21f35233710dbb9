#include "lktube/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "lktube/errors.hpp"

namespace lktube {

SymmetricFunctions symmetric_functions(const std::array<double, 3>& kappa) {
  const double k1 = kappa[0], k2 = kappa[1], k3 = kappa[2];
  return {-(k1 + k2 + k3), k1 * k2 + k1 * k3 + k2 * k3, -k1 * k2 * k3};
}

MeanCurvatures mean_curvatures(const SymmetricFunctions& a, double eps) {
  if (eps != 1.0 && eps != -1.0) throw std::invalid_argument("mean_curvatures: eps must be +-1");
  MeanCurvatures h;
  h.eps = eps;
  h.h1 = -eps * a.a1 / 3.0;
  h.h2 = a.a2 / 3.0;
  h.h3 = -eps * a.a3;
  return h;
}

double ck_constant(int k, double eps) {
  if (k != 1 && k != 2) throw std::invalid_argument("ck_constant: k must be 1 or 2");
  if (eps != 1.0 && eps != -1.0) throw std::invalid_argument("ck_constant: eps must be +-1");
  return (k == 1) ? -3.0 * eps : 1.0;
}

std::array<double, 3> gradient_on_M(const std::array<double, 3>& f_partials, const MetricTensor3& g,
                                    double metric_tol) {
  const double gg = g.g_combination();
  if (std::fabs(gg) <= metric_tol) throw DegenerateMetric("gradient_on_M: |g-combination| below tolerance");
  const double fs = f_partials[0], ft = f_partials[1], fw = f_partials[2];
  const double cs =
      (g.g23 * g.g23 - g.g22 * g.g33) * fs + (-g.g13 * g.g23 + g.g12 * g.g33) * ft +
      (g.g13 * g.g22 - g.g12 * g.g23) * fw;
  const double ct =
      (-g.g13 * g.g23 + g.g12 * g.g33) * fs + (g.g13 * g.g13 - g.g11 * g.g33) * ft +
      (-g.g12 * g.g13 + g.g11 * g.g23) * fw;
  const double cw =
      (g.g13 * g.g22 - g.g12 * g.g23) * fs + (-g.g12 * g.g13 + g.g11 * g.g23) * ft +
      (g.g12 * g.g12 - g.g11 * g.g22) * fw;
  return {cs / gg, ct / gg, cw / gg};
}

double surface_epsilon(const TubeSpec& spec, double s, double t, double w) {
  const Vec4 n = unit_normal(spec, s, t, w);
  const double q = inner(n, n);
  if (std::fabs(std::fabs(q) - 1.0) > 1e-6)
    throw std::runtime_error("surface_epsilon: normal is not unit, <N,N>=" + std::to_string(q));
  return (q > 0.0) ? 1.0 : -1.0;
}

namespace {

double mean_curvature_field(const TubeSpec& spec, int order, double eps, double s, double t, double w) {
  const auto kap = principal_curvatures(spec, s, t, w);
  const auto a = symmetric_functions(kap);
  const auto h = mean_curvatures(a, eps);
  switch (order) {
    case 1: return h.h1;
    case 2: return h.h2;
    case 3: return h.h3;
    default: return 0.0;  // H4 and above
  }
}

std::array<double, 4> frenet_components_of(const Vec4& v, const FrenetFrame& frame) {
  const auto eps = case_signature(frame.curve_case);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = eps[i] * inner(v, frame.f[i]);
  return out;
}

}  // namespace

LkResult lk_gauss_map_numeric(const TubeSpec& spec, int k, double s, double t, double w, double h,
                              bool richardson) {
  if (k != 1 && k != 2) throw std::invalid_argument("lk_gauss_map_numeric: k must be 1 or 2");
  const double eps = surface_epsilon(spec, s, t, w);
  const int n = 3;

  auto hfield = [&](double ss, double tt, double ww) {
    return mean_curvature_field(spec, k + 1, eps, ss, tt, ww);
  };
  auto partials = [&](double hh) -> std::array<double, 3> {
    const double inv = 1.0 / (2.0 * hh);
    return {(hfield(s + hh, t, w) - hfield(s - hh, t, w)) * inv,
            (hfield(s, t + hh, w) - hfield(s, t - hh, w)) * inv,
            (hfield(s, t, w + hh) - hfield(s, t, w - hh)) * inv};
  };
  std::array<double, 3> dH = partials(h);
  if (richardson) {
    const auto d2 = partials(h / 2.0);
    for (std::size_t i = 0; i < 3; ++i) dH[i] = (4.0 * d2[i] - dH[i]) / 3.0;
  }

  const MetricTensor3 g = first_fundamental_form(spec, s, t, w);
  const auto coeff = gradient_on_M(dH, g, spec.metric_tol);
  const auto tang = tangent_basis(spec, s, t, w, h, richardson);
  const Vec4 grad = coeff[0] * tang[0] + coeff[1] * tang[1] + coeff[2] * tang[2];

  const double h1 = mean_curvature_field(spec, 1, eps, s, t, w);
  const double hk1 = mean_curvature_field(spec, k + 1, eps, s, t, w);
  const double hk2 = mean_curvature_field(spec, k + 2, eps, s, t, w);
  const double scalar = n * h1 * hk1 - (n - k - 1) * hk2;

  const Vec4 normal = unit_normal(spec, s, t, w);
  const Vec4 result = (-eps * ck_constant(k, eps)) * (grad + scalar * normal);

  LkResult out;
  out.k = k;
  out.s = s;
  out.t = t;
  out.w = w;
  out.ambient = result;
  out.frenet = frenet_components_of(result, spec.curve->state_at(s).frame);
  return out;
}

namespace {

LkResult assemble_from_frenet(const TubeSpec& spec, int k, double s, double t, double w,
                              const std::array<double, 4>& comps) {
  LkResult out;
  out.k = k;
  out.s = s;
  out.t = t;
  out.w = w;
  out.frenet = comps;
  const FrenetFrame fr = spec.curve->state_at(s).frame;
  out.ambient = comps[0] * fr.f[0] + comps[1] * fr.f[1] + comps[2] * fr.f[2] + comps[3] * fr.f[3];
  return out;
}

void require_regular_for_closed_form(const TubeSpec& spec, double s, double t, double w) {
  if (std::fabs(regularity_margin(spec, s, t, w)) <= spec.reg_tol)
    throw SingularPoint("closed form evaluated at a singular point");
}

}  // namespace

LkResult l1_closed_form(const TubeSpec& spec, double s, double t, double w) {
  require_regular_for_closed_form(spec, s, t, w);
  const double r = spec.radius;
  const double k1 = spec.curve->curvatures().k1(s);
  const double k1p = spec.curve->curvatures().k1.derivative(s);
  const double k2 = spec.curve->curvatures().k2(s);

  if (spec.family.is_timelike()) {
    const double ct = std::cos(t), st = std::sin(t), cw = std::cos(w), sw = std::sin(w);
    const double c = ct * cw;
    const double D = 1.0 + r * k1 * c;
    const double f1 = -2.0 * (k1 * k2 * st + k1p * ct) * cw / (r * D * D * D);
    const double f2 = -2.0 *
                      (r * k1 * (3.0 * r * k1 * ct * ct * ct * cw * cw * cw +
                                 2.0 * ct * ct * std::cos(2.0 * w) + std::cos(2.0 * t)) +
                       c) /
                      (r * r * r * D * D);
    const double f3 = -2.0 * (1.0 + 3.0 * r * k1 * c) * st * cw / (r * r * r * D);
    const double f4 = -2.0 * (3.0 * r * k1 * c + 1.0) * sw / (r * r * r * D);
    return assemble_from_frenet(spec, 1, s, t, w, {f1, f2, f3, f4});
  }

  const double lam = spec.family.lambda;
  const double s4 = spec.family.sign4j(), s5 = spec.family.sign5j();
  const MuTriple m = mu(spec.family.j, spec.family.lambda, t, w);
  const double D = s4 + r * k1 * m.mu2;
  const double r3 = r * r * r;
  const double f1 = 2.0 * (-s5 * k1 * k2 * m.mu3 + k1p * m.mu2) / (r * D * D * D);
  const double f2 = -2.0 * lam *
                    (m.mu2 + 3.0 * r * r * m.mu2 * m.mu2 * m.mu2 * k1 * k1 +
                     k1 * (lam * r + 4.0 * s4 * r * m.mu2 * m.mu2)) /
                    (r3 * D * D);
  const double f3 = -2.0 * lam * s4 * m.mu3 * (1.0 + 3.0 * s4 * r * k1 * m.mu2) / (r3 * D);
  const double f4 = -2.0 * lam * m.mu4 * (s4 + 3.0 * r * k1 * m.mu2) / (r3 * D);
  return assemble_from_frenet(spec, 1, s, t, w, {f1, f2, f3, f4});
}

LkResult l2_closed_form(const TubeSpec& spec, double s, double t, double w) {
  require_regular_for_closed_form(spec, s, t, w);
  const double r = spec.radius;
  const double k1 = spec.curve->curvatures().k1(s);
  const double k1p = spec.curve->curvatures().k1.derivative(s);
  const double k2 = spec.curve->curvatures().k2(s);
  const double r3 = r * r * r;

  if (spec.family.is_timelike()) {
    const double ct = std::cos(t), st = std::sin(t), cw = std::cos(w), sw = std::sin(w);
    const double c = ct * cw;
    const double D = 1.0 + r * k1 * c;
    const double f1 = (k1p * ct + k1 * k2 * st) * cw / (r * r * D * D * D);
    const double inner_term =
        0.5 * r * k1 *
            (24.0 * r * k1 * ct * ct * ct * ct * cw * cw * cw * cw +
             12.0 * ct * ct * ct * std::cos(3.0 * w) + 19.0 * c + 9.0 * std::cos(3.0 * t) * cw) +
        6.0 * ct * ct * std::cos(2.0 * w) + 3.0 * std::cos(2.0 * t) - 1.0;
    const double f2 = k1 * inner_term / (4.0 * r3 * D * D * D);
    const double f3 = 3.0 * k1 * st * ct * cw * cw / (r3 * D);
    const double f4 = 3.0 * k1 * ct * sw * cw / (r3 * D);
    return assemble_from_frenet(spec, 2, s, t, w, {f1, f2, f3, f4});
  }

  const double lam = spec.family.lambda;
  const double s4 = spec.family.sign4j(), s5 = spec.family.sign5j(), pj = spec.family.parity();
  const double lamj = spec.family.lambda_pow(spec.family.j);
  const double lamj1 = spec.family.lambda_pow(spec.family.j + 1);
  const MuTriple m = mu(spec.family.j, spec.family.lambda, t, w);
  const double D = s4 + r * k1 * m.mu2;
  const double D2 = s5 + pj * r * k1 * m.mu2;
  const double f1 = lamj * (pj * m.mu3 * k1 * k2 - s4 * m.mu2 * k1p) / (r * r * D * D * D);
  const double f2 = -lamj1 * k1 *
                    (2.0 * lam * s4 - 3.0 * pj * m.mu4 * m.mu4 - 3.0 * s5 * m.mu3 * m.mu3 -
                     3.0 * s4 * r * k1 * m.mu2 * m.mu2 * m.mu2) /
                    (r3 * D * D);
  const double f3 = lamj1 * m.mu3 * (3.0 * s5 * r * k1 * m.mu2) / (r3 * r * D2);
  const double f4 = lamj1 * m.mu4 * (3.0 * s5 * r * k1 * m.mu2) / (r3 * r * D2);
  return assemble_from_frenet(spec, 2, s, t, w, {f1, f2, f3, f4});
}

LkResult lk_closed_form(const TubeSpec& spec, int k, double s, double t, double w) {
  if (k == 1) return l1_closed_form(spec, s, t, w);
  if (k == 2) return l2_closed_form(spec, s, t, w);
  throw std::invalid_argument("lk_closed_form: k must be 1 or 2");
}

namespace {

struct TimelikeGradTerms {
  double k1, k1p, k2, ct, st, cw, sw, D, bracket, r;
};

TimelikeGradTerms grad_a_terms(const TubeSpec& spec, double s, double t, double w) {
  if (!spec.family.is_timelike())
    throw UnsupportedFamily("closed-form grad a_k is only printed for the timelike family");
  require_regular_for_closed_form(spec, s, t, w);
  TimelikeGradTerms v{};
  v.r = spec.radius;
  v.k1 = spec.curve->curvatures().k1(s);
  v.k1p = spec.curve->curvatures().k1.derivative(s);
  v.k2 = spec.curve->curvatures().k2(s);
  v.ct = std::cos(t);
  v.st = std::sin(t);
  v.cw = std::cos(w);
  v.sw = std::sin(w);
  v.D = 1.0 + v.r * v.k1 * v.ct * v.cw;
  v.bracket = 2.0 * v.ct * v.ct * std::cos(2.0 * w) + std::cos(2.0 * t) - 3.0;
  return v;
}

Vec4 assemble_ambient(const TubeSpec& spec, double s, double f1, double f2, double f3, double f4) {
  const FrenetFrame fr = spec.curve->state_at(s).frame;
  return f1 * fr.f[0] + f2 * fr.f[1] + f3 * fr.f[2] + f4 * fr.f[3];
}

}  // namespace

Vec4 grad_a2_closed_form(const TubeSpec& spec, double s, double t, double w) {
  const auto v = grad_a_terms(spec, s, t, w);
  const double r = v.r, D = v.D;
  const double f1 = -2.0 * (v.k1p * v.ct + v.k1 * v.k2 * v.st) * v.cw / (r * D * D * D);
  const double f2 = -v.k1 * v.bracket / (2.0 * r * r * D * D);
  const double f3 = -2.0 * v.k1 * v.st * v.ct * v.cw * v.cw / (r * r * D * D);
  const double f4 = -2.0 * v.k1 * v.ct * v.sw * v.cw / (r * r * D * D);
  return assemble_ambient(spec, s, f1, f2, f3, f4);
}

Vec4 grad_a3_closed_form(const TubeSpec& spec, double s, double t, double w) {
  const auto v = grad_a_terms(spec, s, t, w);
  const double r = v.r, D = v.D, r3 = v.r * v.r * v.r;
  const double f1 = (v.k1p * v.ct + v.k1 * v.k2 * v.st) * v.cw / (r * r * D * D * D);
  const double f2 = v.k1 * v.bracket / (4.0 * r3 * D * D);
  const double f3 = v.k1 * v.st * v.ct * v.cw * v.cw / (r3 * D * D);
  const double f4 = v.k1 * v.ct * v.sw * v.cw / (r3 * D * D);
  return assemble_ambient(spec, s, f1, f2, f3, f4);
}

}  // namespace lktube
