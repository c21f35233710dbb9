#include "lktube/tube.hpp"

#include <cmath>
#include <stdexcept>

#include "lktube/errors.hpp"

namespace lktube {

TubeFamily TubeFamily::spacelike(int j, int lambda) {
  if (j < 2 || j > 4 || (lambda != 1 && lambda != -1))
    throw std::invalid_argument("TubeFamily: need j in {2,3,4} and lambda in {+1,-1}");
  TubeFamily f;
  f.kind = Kind::Spacelike;
  f.j = j;
  f.lambda = lambda;
  return f;
}

CurveCase TubeFamily::curve_case() const {
  if (is_timelike()) return CurveCase::TimelikeCenter;
  switch (j) {
    case 2: return CurveCase::SpacelikeJ2;
    case 3: return CurveCase::SpacelikeJ3;
    default: return CurveCase::SpacelikeJ4;
  }
}

namespace {
int int_factorial(int n) {
  int out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}
int minus_one_pow(int n) { return (n % 2 == 0) ? 1 : -1; }
}  // namespace

int TubeFamily::sign4j() const { return is_timelike() ? 1 : minus_one_pow(int_factorial(4 - j)); }
int TubeFamily::sign5j() const { return is_timelike() ? 1 : minus_one_pow(int_factorial(5 - j)); }
int TubeFamily::parity() const { return is_timelike() ? 1 : minus_one_pow(j); }
int TubeFamily::lambda_pow(int p) const {
  if (is_timelike()) return 1;
  return (p % 2 == 0) ? 1 : lambda;
}

std::string TubeFamily::name() const {
  if (is_timelike()) return "timelike";
  return "j" + std::to_string(j) + (lambda > 0 ? "+1" : "-1");
}

TubeFamily TubeFamily::parse(const std::string& name) {
  if (name == "timelike") return timelike();
  if (name.size() == 4 && name[0] == 'j' && (name[1] >= '2' && name[1] <= '4') &&
      (name.substr(2) == "+1" || name.substr(2) == "-1"))
    return spacelike(name[1] - '0', name[2] == '+' ? 1 : -1);
  throw std::invalid_argument("unknown tube family '" + name +
                              "' (expected timelike or j{2,3,4}{+1,-1})");
}

MuTriple mu(int j, int lambda, double t, double w) {
  const double hp = (lambda == 1) ? std::sinh(w) : std::cosh(w);
  const double hm = (lambda == 1) ? std::cosh(w) : std::sinh(w);
  double m[3];                              // mu_2, mu_3, mu_4
  auto slot = [](int idx) { return (idx <= 4 ? idx : idx - 3) - 2; };
  m[slot(j)] = hp * std::cosh(t);
  m[slot(j + 1)] = hm;
  m[slot(j + 2)] = hp * std::sinh(t);
  return {m[0], m[1], m[2]};
}

MuTriple mu_dt(int j, int lambda, double t, double w) {
  const double hp = (lambda == 1) ? std::sinh(w) : std::cosh(w);
  double m[3];
  auto slot = [](int idx) { return (idx <= 4 ? idx : idx - 3) - 2; };
  m[slot(j)] = hp * std::sinh(t);
  m[slot(j + 1)] = 0.0;
  m[slot(j + 2)] = hp * std::cosh(t);
  return {m[0], m[1], m[2]};
}

MuTriple mu_dw(int j, int lambda, double t, double w) {
  const double hpw = (lambda == 1) ? std::cosh(w) : std::sinh(w);
  const double hmw = (lambda == 1) ? std::sinh(w) : std::cosh(w);
  double m[3];
  auto slot = [](int idx) { return (idx <= 4 ? idx : idx - 3) - 2; };
  m[slot(j)] = hpw * std::cosh(t);
  m[slot(j + 1)] = hmw;
  m[slot(j + 2)] = hpw * std::sinh(t);
  return {m[0], m[1], m[2]};
}

MuTriple profile(const TubeFamily& family, double t, double w) {
  if (family.is_timelike())
    return {std::cos(t) * std::cos(w), std::sin(t) * std::cos(w), std::sin(w)};
  return mu(family.j, family.lambda, t, w);
}

MuTriple profile_dt(const TubeFamily& family, double t, double w) {
  if (family.is_timelike())
    return {-std::sin(t) * std::cos(w), std::cos(t) * std::cos(w), 0.0};
  return mu_dt(family.j, family.lambda, t, w);
}

MuTriple profile_dw(const TubeFamily& family, double t, double w) {
  if (family.is_timelike())
    return {-std::cos(t) * std::sin(w), -std::sin(t) * std::sin(w), std::cos(w)};
  return mu_dw(family.j, family.lambda, t, w);
}

double regularity_margin(const TubeSpec& spec, double s, double t, double w) {
  const double k1 = spec.curve->curvatures().k1(s);
  const MuTriple p = profile(spec.family, t, w);
  return 1.0 + spec.family.sign4j() * spec.radius * k1 * p.mu2;
}

namespace {
void require_regular(const TubeSpec& spec, double s, double t, double w) {
  if (std::fabs(regularity_margin(spec, s, t, w)) <= spec.reg_tol)
    throw SingularPoint("regularity margin violated at s=" + std::to_string(s) +
                        " t=" + std::to_string(t) + " w=" + std::to_string(w));
}
}  // namespace

std::array<double, 4> unit_normal_components(const TubeFamily& family, double t, double w) {
  const MuTriple p = profile(family, t, w);
  const double pref =
      family.is_timelike() ? -1.0 : -static_cast<double>(family.sign4j() * family.lambda_pow(family.j));
  return {0.0, pref * p.mu2, pref * p.mu3, pref * p.mu4};
}

Vec4 tube_point(const TubeSpec& spec, double s, double t, double w) {
  require_regular(spec, s, t, w);
  const CurveState st = spec.curve->state_at(s);
  const MuTriple p = profile(spec.family, t, w);
  return st.point + spec.radius * (p.mu2 * st.frame.f[1] + p.mu3 * st.frame.f[2] + p.mu4 * st.frame.f[3]);
}

Vec4 unit_normal(const TubeSpec& spec, double s, double t, double w) {
  require_regular(spec, s, t, w);
  const CurveState st = spec.curve->state_at(s);
  const auto n = unit_normal_components(spec.family, t, w);
  return n[1] * st.frame.f[1] + n[2] * st.frame.f[2] + n[3] * st.frame.f[3];
}

MetricTensor3 first_fundamental_form(const TubeSpec& spec, double s, double t, double w) {
  require_regular(spec, s, t, w);
  const double r = spec.radius;
  const double k1 = spec.curve->curvatures().k1(s);
  const double k2 = spec.curve->curvatures().k2(s);
  const double k3 = spec.curve->curvatures().k3(s);
  MetricTensor3 g;
  if (spec.family.is_timelike()) {
    const double ct = std::cos(t), stn = std::sin(t), cw = std::cos(w), sw = std::sin(w);
    const double c = ct * cw;
    g.g11 = -(1.0 + r * k1 * c) * (1.0 + r * k1 * c) +
            (r * k2 * c - r * k3 * sw) * (r * k2 * c - r * k3 * sw) +
            r * r * (k2 * k2 + k3 * k3) * stn * stn * cw * cw;
    g.g12 = r * r * (k2 * cw - k3 * ct * sw) * cw;
    g.g22 = r * r * cw * cw;
    g.g13 = r * r * k3 * stn;
    g.g23 = 0.0;
    g.g33 = r * r;
    return g;
  }
  const int j = spec.family.j, lam = spec.family.lambda;
  const double s4 = spec.family.sign4j(), s5 = spec.family.sign5j(), pj = spec.family.parity();
  const MuTriple m = mu(j, lam, t, w);
  const MuTriple mw = mu_dw(j, lam, t, w);
  // (mu_{j+1})_w: select the w-derivative of the wrapped index j+1
  const int jp1 = (j + 1 <= 4) ? j + 1 : j - 2;
  const double mujp1_w = (jp1 == 2) ? mw.mu2 : (jp1 == 3) ? mw.mu3 : mw.mu4;

  g.g11 = 1.0 + r * r * k2 * k2 * (-s4 * m.mu3 * m.mu3 + pj * m.mu2 * m.mu2) +
          r * r * k3 * k3 * (s5 * m.mu3 * m.mu3 + pj * m.mu4 * m.mu4) + 2.0 * s4 * r * k1 * m.mu2 +
          r * r * k1 * k1 * m.mu2 * m.mu2 - 2.0 * s5 * r * r * k2 * k3 * m.mu2 * m.mu4;
  g.g12 = r * r * mujp1_w * (pj * k3 * mw.mu2 - s4 * k2 * mw.mu4);
  g.g22 = r * r * mujp1_w * mujp1_w;
  switch (j) {
    case 2: g.g13 = lam * r * r * (-k2 * std::cosh(t) + k3 * std::sinh(t)); break;
    case 3: g.g13 = -lam * r * r * k3 * std::cosh(t); break;
    default: g.g13 = lam * r * r * k2 * std::sinh(t); break;
  }
  g.g23 = 0.0;
  g.g33 = -lam * r * r;
  return g;
}

std::array<double, 3> principal_curvatures(const TubeSpec& spec, double s, double t, double w) {
  require_regular(spec, s, t, w);
  const double r = spec.radius;
  const double k1 = spec.curve->curvatures().k1(s);
  if (spec.family.is_timelike()) {
    const double c = std::cos(t) * std::cos(w);
    return {1.0 / r, 1.0 / r, k1 * c / (1.0 + r * k1 * c)};
  }
  const double s4 = spec.family.sign4j();
  const double lamj = spec.family.lambda_pow(spec.family.j);
  const MuTriple m = mu(spec.family.j, spec.family.lambda, t, w);
  const double k12 = s4 * lamj / r;
  const double k3p = k1 * m.mu2 / (lamj * (1.0 + s4 * r * k1 * m.mu2));
  return {k12, k12, k3p};
}

std::array<Vec4, 3> tangent_basis(const TubeSpec& spec, double s, double t, double w, double h,
                                  bool richardson) {
  if (h <= 0.0) throw std::invalid_argument("tangent_basis: h must be positive");
  auto central = [&](double hh) -> std::array<Vec4, 3> {
    const Vec4 ps = tube_point(spec, s + hh, t, w) - tube_point(spec, s - hh, t, w);
    const Vec4 pt = tube_point(spec, s, t + hh, w) - tube_point(spec, s, t - hh, w);
    const Vec4 pw = tube_point(spec, s, t, w + hh) - tube_point(spec, s, t, w - hh);
    const double inv = 1.0 / (2.0 * hh);
    return {ps * inv, pt * inv, pw * inv};
  };
  const auto d1 = central(h);
  if (!richardson) return d1;
  const auto d2 = central(h / 2.0);
  std::array<Vec4, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = (4.0 * d2[i] - d1[i]) * (1.0 / 3.0);
  return out;
}

TubeSpec make_tube(const TubeFamily& family, const CurvatureFunctions& curvatures, double radius,
                   double s_begin, double s_end, double step, double pad) {
  if (radius <= 0.0) throw std::invalid_argument("make_tube: radius must be positive");
  const CurveCase c = family.curve_case();
  auto curve = std::make_shared<FramedCurve>(
      integrate_frame(c, curvatures, s_begin - pad, s_end + pad, standard_frame(c), step));
  TubeSpec spec;
  spec.curve = std::move(curve);
  spec.radius = radius;
  spec.family = family;
  return spec;
}

}  // namespace lktube
