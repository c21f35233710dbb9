#include <doctest.h>

#include <cmath>

#include "fixture.hpp"
#include "lktube/errors.hpp"
#include "lktube/frenet.hpp"

using namespace lktube;
using lktube::testing::AnalyticFixture;

namespace {
double max_component_diff(const Vec4& a, const Vec4& b) {
  double out = 0.0;
  for (int i = 0; i < 4; ++i) out = std::fmax(out, std::fabs(a[i] - b[i]));
  return out;
}
constexpr double kTwoPi = 6.283185307179586476925287;
}  // namespace

TEST_CASE("frenet_derivative sign patterns") {
  SUBCASE("timelike case, (k1,k2,k3)=(1,0,0)") {
    const FrenetFrame fr = standard_frame(CurveCase::TimelikeCenter);
    const auto d = frenet_derivative(fr, {1, 0, 0});
    CHECK(max_component_diff(d[0], fr.f[1]) == 0.0);  // F1' = F2
    CHECK(max_component_diff(d[1], fr.f[0]) == 0.0);  // F2' = F1
    CHECK(euclidean_norm(d[2]) == 0.0);
    CHECK(euclidean_norm(d[3]) == 0.0);
  }
  SUBCASE("spacelike j=2, (1,1,0)") {
    const FrenetFrame fr = standard_frame(CurveCase::SpacelikeJ2);
    const auto d = frenet_derivative(fr, {1, 1, 0});
    CHECK(max_component_diff(d[1], fr.f[0] + fr.f[2]) == 0.0);  // F2' = F1 + F3
    CHECK(max_component_diff(d[2], fr.f[1]) == 0.0);            // F3' = F2
  }
  SUBCASE("spacelike j=4, (0,1,1)") {
    const FrenetFrame fr = standard_frame(CurveCase::SpacelikeJ4);
    const auto d = frenet_derivative(fr, {0, 1, 1});
    CHECK(max_component_diff(d[1], fr.f[2]) == 0.0);            // F2' = F3
    CHECK(max_component_diff(d[2], -fr.f[1] + fr.f[3]) == 0.0); // F3' = -F2 + F4
    CHECK(max_component_diff(d[3], fr.f[2]) == 0.0);            // F4' = F3
  }
}

TEST_CASE("check_orthonormality") {
  FrenetFrame fr = standard_frame(CurveCase::TimelikeCenter);
  CHECK(check_orthonormality(fr) == 0.0);
  fr.f[1] = fr.f[1] * (1.0 + 1e-3);
  CHECK(check_orthonormality(fr) == doctest::Approx(2e-3 + 1e-6).epsilon(1e-9));
}

TEST_CASE("orthonormalize rejects degenerate frames") {
  FrenetFrame fr = standard_frame(CurveCase::TimelikeCenter);
  fr.f[1] = fr.f[0];  // parallel to F1: projection leaves nothing
  CHECK_THROWS_AS(orthonormalize(fr), DegenerateFrame);
}

TEST_CASE("zero curvature integrates to a straight line with constant frame") {
  for (CurveCase c : {CurveCase::TimelikeCenter, CurveCase::SpacelikeJ2, CurveCase::SpacelikeJ3,
                      CurveCase::SpacelikeJ4}) {
    const CurvatureFunctions k{ScalarFunction::zero(), ScalarFunction::zero(),
                               ScalarFunction::zero()};
    const FrenetFrame f0 = standard_frame(c);
    const FramedCurve curve = integrate_frame(c, k, 0.0, 2.0, f0, 1e-2);
    for (std::size_t i = 0; i < curve.s_grid().size(); ++i) {
      const auto& st = curve.samples()[i];
      CHECK(max_component_diff(st.point, curve.s_grid()[i] * f0.f[0]) < 1e-13);
      for (int q = 0; q < 4; ++q) CHECK(max_component_diff(st.frame.f[q], f0.f[q]) < 1e-13);
    }
  }
}

TEST_CASE("zero-length range returns the initial data unchanged") {
  const FrenetFrame f0 = standard_frame(CurveCase::SpacelikeJ3);
  const CurvatureFunctions k{ScalarFunction::constant(1.0), ScalarFunction::constant(0.5),
                             ScalarFunction::zero()};
  const FramedCurve curve = integrate_frame(CurveCase::SpacelikeJ3, k, 1.5, 1.5, f0);
  CHECK(curve.s_grid().size() == 1);
  CHECK(curve.s_grid()[0] == 1.5);
  const CurveState st = curve.state_at(1.5);
  for (int q = 0; q < 4; ++q) CHECK(max_component_diff(st.frame.f[q], f0.f[q]) == 0.0);
}

TEST_CASE("analytic fixture: integrated frame matches the closed-form curve") {
  // the analytic curve is unit-speed timelike (the identity has cosh^2 cancellation,
  // so the float check loosens with |s|)
  for (double s : {0.0, 0.5, 2.0, 5.0}) {
    const Vec4 bp = AnalyticFixture::beta_prime(s);
    CHECK(std::fabs(inner(bp, bp) + 1.0) < 1e-11);
  }

  // absolute bound on a range where components are O(1)
  const FramedCurve short_curve =
      integrate_frame(CurveCase::TimelikeCenter, AnalyticFixture::curvatures(), 0.0, 2.0,
                      AnalyticFixture::frame(0.0), 1e-3, AnalyticFixture::beta(0.0));
  double worst_f1 = 0.0, worst_beta = 0.0;
  for (std::size_t i = 0; i < short_curve.s_grid().size(); ++i) {
    const double s = short_curve.s_grid()[i];
    const auto& st = short_curve.samples()[i];
    worst_f1 = std::fmax(worst_f1, max_component_diff(st.frame.f[0], AnalyticFixture::beta_prime(s)));
    worst_beta = std::fmax(worst_beta, max_component_diff(st.point, AnalyticFixture::beta(s)));
  }
  CHECK(worst_f1 < 1e-8);
  CHECK(worst_beta < 1e-8);

  // over the full period the components grow like e^s; require relative accuracy
  const FramedCurve curve =
      integrate_frame(CurveCase::TimelikeCenter, AnalyticFixture::curvatures(), 0.0, kTwoPi,
                      AnalyticFixture::frame(0.0), 1e-3, AnalyticFixture::beta(0.0));
  double worst_rel = 0.0, worst_ortho = 0.0, worst_speed = 0.0;
  for (std::size_t i = 0; i < curve.s_grid().size(); ++i) {
    const double s = curve.s_grid()[i];
    const auto& st = curve.samples()[i];
    const Vec4 want = AnalyticFixture::beta_prime(s);
    worst_rel = std::fmax(worst_rel, max_component_diff(st.frame.f[0], want) /
                                         std::fmax(1.0, euclidean_norm(want)));
    worst_ortho = std::fmax(worst_ortho, check_orthonormality(st.frame));
    worst_speed = std::fmax(worst_speed, std::fabs(inner(st.frame.f[0], st.frame.f[0]) + 1.0));
  }
  CHECK(worst_rel < 1e-8);
  CHECK(worst_ortho < 1e-8);
  CHECK(worst_speed < 1e-9);  // <F1,F1> itself cancels ~|F1|^2 ulps at s = 2pi
}

TEST_CASE("dense output between nodes stays accurate") {
  const FramedCurve curve =
      integrate_frame(CurveCase::TimelikeCenter, AnalyticFixture::curvatures(), 0.0, 1.0,
                      AnalyticFixture::frame(0.0), 1e-3, AnalyticFixture::beta(0.0));
  for (double s : {0.12343567, 0.5000411, 0.9876521}) {
    const CurveState st = curve.state_at(s);
    CHECK(max_component_diff(st.point, AnalyticFixture::beta(s)) < 1e-8);
    const FrenetFrame want = AnalyticFixture::frame(s);
    for (int q = 0; q < 4; ++q) CHECK(max_component_diff(st.frame.f[q], want.f[q]) < 1e-8);
  }
  CHECK_THROWS_AS(curve.state_at(2.0), std::out_of_range);
}

TEST_CASE("orthonormality and unit-speed drift stay below 1e-8 for all four cases") {
  const CurvatureFunctions k{ScalarFunction::sinusoid(0.3, 0.1, 1.0), ScalarFunction::constant(0.2),
                             ScalarFunction::constant(0.1)};
  for (CurveCase c : {CurveCase::TimelikeCenter, CurveCase::SpacelikeJ2, CurveCase::SpacelikeJ3,
                      CurveCase::SpacelikeJ4}) {
    const FramedCurve curve = integrate_frame(c, k, 0.0, kTwoPi, standard_frame(c), 1e-3);
    double worst = 0.0;
    for (const auto& st : curve.samples()) worst = std::fmax(worst, check_orthonormality(st.frame));
    CHECK(worst < 1e-8);

    // <beta', beta'> = eps_1, beta' recovered from the integrated points
    const auto& sg = curve.s_grid();
    const auto& smp = curve.samples();
    const double h = sg[1] - sg[0];
    const double eps1 = case_signature(c)[0];
    double speed = 0.0;
    for (std::size_t i = 2; i + 2 < sg.size(); ++i) {
      Vec4 d;
      for (int q = 0; q < 4; ++q)
        d[q] = (-smp[i + 2].point[q] + 8.0 * smp[i + 1].point[q] - 8.0 * smp[i - 1].point[q] +
                smp[i - 2].point[q]) /
               (12.0 * h);
      speed = std::fmax(speed, std::fabs(inner(d, d) - eps1));
    }
    CHECK(speed < 1e-8);
  }
}

TEST_CASE("one RK4 step drifts less than 10 step^5 before re-orthonormalization") {
  // test-local RK4 built on the public frenet_derivative
  const CurvatureFunctions kf = AnalyticFixture::curvatures();
  auto rk4_once = [&](FrenetFrame y, double s, double h) {
    auto eval = [&](const FrenetFrame& fr, double ss) {
      return frenet_derivative(fr, {kf.k1(ss), kf.k2(ss), kf.k3(ss)});
    };
    auto advance = [&](const FrenetFrame& fr, const std::array<Vec4, 4>& d, double a) {
      FrenetFrame out = fr;
      for (int q = 0; q < 4; ++q) out.f[q] = fr.f[q] + a * d[q];
      return out;
    };
    const auto d1 = eval(y, s);
    const auto d2 = eval(advance(y, d1, h / 2), s + h / 2);
    const auto d3 = eval(advance(y, d2, h / 2), s + h / 2);
    const auto d4 = eval(advance(y, d3, h), s + h);
    FrenetFrame out = y;
    for (int q = 0; q < 4; ++q)
      out.f[q] = y.f[q] + (h / 6.0) * (d1[q] + 2.0 * d2[q] + 2.0 * d3[q] + d4[q]);
    return out;
  };
  for (double h : {1e-2, 1e-3}) {
    const FrenetFrame stepped = rk4_once(AnalyticFixture::frame(0.3), 0.3, h);
    CHECK(check_orthonormality(stepped) < 10.0 * std::pow(h, 5));
  }
}

TEST_CASE("integrate_frame validates its inputs") {
  const CurvatureFunctions k{ScalarFunction::zero(), ScalarFunction::zero(), ScalarFunction::zero()};
  FrenetFrame bad = standard_frame(CurveCase::TimelikeCenter);
  bad.f[2] = bad.f[2] * 1.5;
  CHECK_THROWS_AS(integrate_frame(CurveCase::TimelikeCenter, k, 0.0, 1.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_frame(CurveCase::TimelikeCenter, k, 0.0, 1.0, standard_frame(CurveCase::TimelikeCenter), -1.0),
      std::invalid_argument);
}
