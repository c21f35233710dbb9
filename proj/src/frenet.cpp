#include "lktube/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lktube/errors.hpp"

namespace lktube {

std::array<double, 4> case_signature(CurveCase c) {
  std::array<double, 4> eps{1.0, 1.0, 1.0, 1.0};
  eps[static_cast<std::size_t>(timelike_slot(c))] = -1.0;
  return eps;
}

int timelike_slot(CurveCase c) {
  switch (c) {
    case CurveCase::TimelikeCenter: return 0;
    case CurveCase::SpacelikeJ2: return 1;
    case CurveCase::SpacelikeJ3: return 2;
    case CurveCase::SpacelikeJ4: return 3;
  }
  return 0;
}

const char* case_name(CurveCase c) {
  switch (c) {
    case CurveCase::TimelikeCenter: return "timelike";
    case CurveCase::SpacelikeJ2: return "spacelike-j2";
    case CurveCase::SpacelikeJ3: return "spacelike-j3";
    case CurveCase::SpacelikeJ4: return "spacelike-j4";
  }
  return "?";
}

FrenetFrame standard_frame(CurveCase c) {
  const Vec4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0}, e4{0, 0, 0, 1};
  FrenetFrame fr;
  fr.curve_case = c;
  switch (c) {
    case CurveCase::TimelikeCenter: fr.f = {e1, e2, e3, e4}; break;
    case CurveCase::SpacelikeJ2: fr.f = {e2, e1, e3, e4}; break;
    case CurveCase::SpacelikeJ3: fr.f = {e2, e3, e1, e4}; break;
    case CurveCase::SpacelikeJ4: fr.f = {e2, e3, e4, e1}; break;
  }
  return fr;
}

std::array<Vec4, 4> frenet_derivative(const FrenetFrame& frame, const std::array<double, 3>& k) {
  const Vec4 &f1 = frame.f[0], &f2 = frame.f[1], &f3 = frame.f[2], &f4 = frame.f[3];
  const double k1 = k[0], k2 = k[1], k3 = k[2];
  switch (frame.curve_case) {
    case CurveCase::TimelikeCenter:
      return {k1 * f2, k1 * f1 + k2 * f3, -k2 * f2 + k3 * f4, -k3 * f3};
    case CurveCase::SpacelikeJ2:
      return {k1 * f2, k1 * f1 + k2 * f3, k2 * f2 + k3 * f4, -k3 * f3};
    case CurveCase::SpacelikeJ3:
      return {k1 * f2, -k1 * f1 + k2 * f3, k2 * f2 + k3 * f4, k3 * f3};
    case CurveCase::SpacelikeJ4:
      return {k1 * f2, -k1 * f1 + k2 * f3, -k2 * f2 + k3 * f4, k3 * f3};
  }
  return {};
}

double check_orthonormality(const FrenetFrame& frame) {
  const auto eps = case_signature(frame.curve_case);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double want = (i == j) ? eps[static_cast<std::size_t>(i)] : 0.0;
      worst = std::fmax(worst, std::fabs(inner(frame.f[static_cast<std::size_t>(i)],
                                               frame.f[static_cast<std::size_t>(j)]) -
                                         want));
    }
  return worst;
}

FrenetFrame orthonormalize(FrenetFrame frame) {
  const auto eps = case_signature(frame.curve_case);
  for (std::size_t i = 0; i < 4; ++i) {
    Vec4 v = frame.f[i];
    for (std::size_t j = 0; j < i; ++j) {
      // <F_j,F_j> = eps_j, so the projection coefficient is eps_j <v,F_j>
      v = v - eps[j] * inner(v, frame.f[j]) * frame.f[j];
    }
    const double q = inner(v, v);
    const double len = std::sqrt(std::fabs(q));
    if (len < 1e-10) throw DegenerateFrame("frame vector " + std::to_string(i + 1) + " degenerated");
    if (q * eps[i] < 0.0)
      throw DegenerateFrame("frame vector " + std::to_string(i + 1) + " changed causal character");
    frame.f[i] = v * (1.0 / len);
  }
  return frame;
}

FramedCurve::FramedCurve(CurveCase c, CurvatureFunctions curvatures, std::vector<double> s_grid,
                         std::vector<CurveState> samples)
    : case_(c), curvatures_(std::move(curvatures)), s_grid_(std::move(s_grid)), samples_(std::move(samples)) {
  if (s_grid_.empty() || s_grid_.size() != samples_.size())
    throw std::invalid_argument("FramedCurve: inconsistent sample data");
}

namespace {

struct State20 {
  Vec4 beta;
  FrenetFrame frame;
};

State20 rhs(const State20& y, const CurvatureFunctions& cf, double s) {
  State20 d;
  d.beta = y.frame.f[0];  // beta' = F1
  d.frame.curve_case = y.frame.curve_case;
  d.frame.f = frenet_derivative(y.frame, {cf.k1(s), cf.k2(s), cf.k3(s)});
  return d;
}

State20 axpy(const State20& y, double a, const State20& d) {
  State20 out;
  out.beta = y.beta + a * d.beta;
  out.frame.curve_case = y.frame.curve_case;
  for (std::size_t i = 0; i < 4; ++i) out.frame.f[i] = y.frame.f[i] + a * d.frame.f[i];
  return out;
}

State20 rk4_step(const State20& y, const CurvatureFunctions& cf, double s, double h) {
  const State20 k1 = rhs(y, cf, s);
  const State20 k2 = rhs(axpy(y, h / 2, k1), cf, s + h / 2);
  const State20 k3 = rhs(axpy(y, h / 2, k2), cf, s + h / 2);
  const State20 k4 = rhs(axpy(y, h, k3), cf, s + h);
  State20 out = y;
  out.beta = y.beta + (h / 6.0) * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta);
  for (std::size_t i = 0; i < 4; ++i)
    out.frame.f[i] =
        y.frame.f[i] + (h / 6.0) * (k1.frame.f[i] + 2.0 * k2.frame.f[i] + 2.0 * k3.frame.f[i] + k4.frame.f[i]);
  return out;
}

double hermite(double y0, double d0, double y1, double d1, double u, double h) {
  // cubic Hermite on [0,1] scaled to interval length h
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * h * d1;
}

}  // namespace

CurveState FramedCurve::state_at(double s) const {
  if (s < s_grid_.front() - 1e-12 || s > s_grid_.back() + 1e-12)
    throw std::out_of_range("FramedCurve::state_at: s outside integrated range");
  if (s_grid_.size() == 1) return samples_.front();
  auto it = std::upper_bound(s_grid_.begin(), s_grid_.end(), s);
  std::size_t hi = static_cast<std::size_t>(it - s_grid_.begin());
  if (hi == 0) hi = 1;
  if (hi >= s_grid_.size()) hi = s_grid_.size() - 1;
  const std::size_t lo = hi - 1;
  const double s0 = s_grid_[lo], s1 = s_grid_[hi], h = s1 - s0;
  const double u = (s - s0) / h;

  const State20 y0{samples_[lo].point, samples_[lo].frame};
  const State20 y1{samples_[hi].point, samples_[hi].frame};
  const State20 d0 = rhs(y0, curvatures_, s0);
  const State20 d1 = rhs(y1, curvatures_, s1);

  CurveState out;
  out.frame.curve_case = case_;
  for (int c = 0; c < 4; ++c)
    out.point[c] = hermite(y0.beta[c], d0.beta[c], y1.beta[c], d1.beta[c], u, h);
  for (std::size_t i = 0; i < 4; ++i)
    for (int c = 0; c < 4; ++c)
      out.frame.f[i][c] = hermite(y0.frame.f[i][c], d0.frame.f[i][c], y1.frame.f[i][c], d1.frame.f[i][c], u, h);
  return out;
}

FramedCurve integrate_frame(CurveCase c, const CurvatureFunctions& curvatures, double s_begin,
                            double s_end, const FrenetFrame& initial, double step,
                            const Vec4& initial_point) {
  if (step <= 0.0) throw std::invalid_argument("integrate_frame: step must be positive");
  if (s_end < s_begin) throw std::invalid_argument("integrate_frame: s_end < s_begin");
  if (initial.curve_case != c) throw std::invalid_argument("integrate_frame: case mismatch");
  if (!is_finite(initial_point)) throw std::invalid_argument("integrate_frame: non-finite initial point");
  for (const auto& f : initial.f)
    if (!is_finite(f)) throw std::invalid_argument("integrate_frame: non-finite initial frame");
  if (check_orthonormality(initial) > kFrameTol)
    throw std::invalid_argument("integrate_frame: initial frame not orthonormal within 1e-8");

  std::vector<double> grid{s_begin};
  std::vector<CurveState> samples;
  samples.push_back({initial_point, initial});

  if (s_end > s_begin) {
    const double len = s_end - s_begin;
    const auto n = static_cast<std::size_t>(std::ceil(len / step - 1e-12));
    const double h = len / static_cast<double>(n);
    State20 y{initial_point, initial};
    double s = s_begin;
    for (std::size_t i = 0; i < n; ++i) {
      y = rk4_step(y, curvatures, s, h);
      y.frame = orthonormalize(y.frame);
      s = s_begin + static_cast<double>(i + 1) * h;
      grid.push_back(s);
      samples.push_back({y.beta, y.frame});
    }
  }
  return {c, curvatures, std::move(grid), std::move(samples)};
}

}  // namespace lktube
