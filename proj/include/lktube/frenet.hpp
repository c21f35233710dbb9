#pragma once

#include <array>
#include <string>
#include <vector>

#include "lktube/curvature.hpp"
#include "lktube/minkowski.hpp"

namespace lktube {

// The four non-null curve cases, named by which Frenet vector is timelike.
enum class CurveCase { TimelikeCenter, SpacelikeJ2, SpacelikeJ3, SpacelikeJ4 };

// Signature vector (eps_1..eps_4); exactly one entry is -1.
std::array<double, 4> case_signature(CurveCase c);

// 0-based index of the timelike frame vector.
int timelike_slot(CurveCase c);

const char* case_name(CurveCase c);

struct FrenetFrame {
  std::array<Vec4, 4> f{};  // F1..F4
  CurveCase curve_case = CurveCase::TimelikeCenter;
};

// Identity-basis frame with the timelike e1 placed at the case's timelike slot.
FrenetFrame standard_frame(CurveCase c);

// Frenet system of the case: returns (F1'..F4') for curvature values (k1,k2,k3).
std::array<Vec4, 4> frenet_derivative(const FrenetFrame& frame, const std::array<double, 3>& k);

// max over i<=j of |<F_i,F_j> - eps_i delta_ij|
double check_orthonormality(const FrenetFrame& frame);

// Signature-aware Gram-Schmidt in the order F1 -> F4, normalizing by |<.,.>|^{1/2}.
// Throws DegenerateFrame if a normalization denominator falls below 1e-10.
FrenetFrame orthonormalize(FrenetFrame frame);

struct CurveState {
  Vec4 point;
  FrenetFrame frame;
};

// A unit-speed curve realized by RK4 propagation of its Frenet system from
// prescribed curvature functions. Immutable after construction; evaluation at
// arbitrary s uses cubic Hermite dense output between the stored nodes.
class FramedCurve {
 public:
  FramedCurve(CurveCase c, CurvatureFunctions curvatures, std::vector<double> s_grid,
              std::vector<CurveState> samples);

  CurveCase curve_case() const { return case_; }
  const CurvatureFunctions& curvatures() const { return curvatures_; }
  const std::vector<double>& s_grid() const { return s_grid_; }
  const std::vector<CurveState>& samples() const { return samples_; }
  double s_min() const { return s_grid_.front(); }
  double s_max() const { return s_grid_.back(); }

  CurveState state_at(double s) const;

 private:
  CurveCase case_;
  CurvatureFunctions curvatures_;
  std::vector<double> s_grid_;
  std::vector<CurveState> samples_;
};

// Classical fixed-step RK4 on (beta, F1..F4) with beta' = F1, re-orthonormalizing
// the frame after every step. A zero-length range yields the initial data only.
FramedCurve integrate_frame(CurveCase c, const CurvatureFunctions& curvatures, double s_begin,
                            double s_end, const FrenetFrame& initial, double step = 1e-3,
                            const Vec4& initial_point = Vec4{});

constexpr double kFrameTol = 1e-8;

}  // namespace lktube
