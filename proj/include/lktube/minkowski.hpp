#pragma once

#include <array>
#include <cmath>

namespace lktube {

// Vector in Minkowski 4-space E^4_1 with the index-1 metric (-,+,+,+).
struct Vec4 {
  std::array<double, 4> v{};

  Vec4() = default;
  Vec4(double x1, double x2, double x3, double x4) : v{x1, x2, x3, x4} {}

  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  Vec4 operator+(const Vec4& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2], v[3] + o.v[3]}; }
  Vec4 operator-(const Vec4& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2], v[3] - o.v[3]}; }
  Vec4 operator*(double a) const { return {a * v[0], a * v[1], a * v[2], a * v[3]}; }
  Vec4 operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }
  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] += o.v[static_cast<std::size_t>(i)];
    return *this;
  }
};

inline Vec4 operator*(double a, const Vec4& u) { return u * a; }

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

// <u,v> = -u1 v1 + u2 v2 + u3 v3 + u4 v4
inline double inner(const Vec4& u, const Vec4& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

// ||u|| = sqrt(|<u,u>|)
inline double norm(const Vec4& u) { return std::sqrt(std::fabs(inner(u, u))); }

// Euclidean norm, used as the residual gauge on component quadruples.
inline double euclidean_norm(const Vec4& u) {
  return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
}

inline bool is_finite(const Vec4& u) {
  return std::isfinite(u[0]) && std::isfinite(u[1]) && std::isfinite(u[2]) && std::isfinite(u[3]);
}

// Ternary vector product: formal determinant expanded along the row (-e1, e2, e3, e4).
// Trilinear, alternating, and <u x v x w, u> = <u x v x w, v> = <u x v x w, w> = 0.
inline Vec4 triple_cross(const Vec4& u, const Vec4& v, const Vec4& w) {
  auto minor3 = [&](int c0, int c1, int c2) {
    return u[c0] * (v[c1] * w[c2] - v[c2] * w[c1]) - u[c1] * (v[c0] * w[c2] - v[c2] * w[c0]) +
           u[c2] * (v[c0] * w[c1] - v[c1] * w[c0]);
  };
  // cofactor signs of the first row combined with the (-e1,e2,e3,e4) entries
  return {-minor3(1, 2, 3), -minor3(0, 2, 3), minor3(0, 1, 3), -minor3(0, 1, 2)};
}

// Spacelike if <u,u> > tol or u = 0, Timelike if <u,u> < -tol, Lightlike otherwise.
// The tolerance band is 1e-12 scaled by the magnitude of the vector's coordinates.
inline CausalCharacter causal_character(const Vec4& u) {
  const double q = inner(u, u);
  const double scale = u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
  const double tol = 1e-12 * std::fmax(1.0, scale);
  if (scale == 0.0) return CausalCharacter::Spacelike;  // zero vector counts as spacelike
  if (q > tol) return CausalCharacter::Spacelike;
  if (q < -tol) return CausalCharacter::Timelike;
  return CausalCharacter::Lightlike;
}

}  // namespace lktube
