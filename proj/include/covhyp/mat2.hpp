// Fixed-size 2-vector and 2x2 matrix helpers. Row-major storage:
//   [[m00 m01], [m10 m11]].
#pragma once

#include <cmath>

#include "covhyp/errors.hpp"

namespace covhyp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Mat2 {
  double m00 = 0.0, m01 = 0.0;
  double m10 = 0.0, m11 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  double det() const { return m00 * m11 - m01 * m10; }
  double trace() const { return m00 + m11; }
};

inline Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline Vec2 operator*(const Mat2& A, Vec2 v) {
  return {A.m00 * v.x + A.m01 * v.y, A.m10 * v.x + A.m11 * v.y};
}

inline Mat2 operator*(const Mat2& A, const Mat2& B) {
  return {A.m00 * B.m00 + A.m01 * B.m10, A.m00 * B.m01 + A.m01 * B.m11,
          A.m10 * B.m00 + A.m11 * B.m10, A.m10 * B.m01 + A.m11 * B.m11};
}

inline double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Eigenvalues of a 2x2 matrix in ascending order.
struct Eigenpair {
  double lo = 0.0;
  double hi = 0.0;
};

// Quadratic formula on the characteristic polynomial. The discriminant is
// computed as (m00-m11)^2 + 4 m01 m10, which is exact for symmetric-like
// matrices and avoids cancellation in tr^2 - 4 det.
inline Eigenpair real_eigenvalues(const Mat2& A) {
  const double disc = (A.m00 - A.m11) * (A.m00 - A.m11) + 4.0 * A.m01 * A.m10;
  if (disc < 0.0) {
    throw ComplexEigenvalues("characteristic discriminant is negative");
  }
  const double s = std::sqrt(disc);
  const double tr = A.trace();
  return {0.5 * (tr - s), 0.5 * (tr + s)};
}

inline double spectral_radius(const Mat2& A) {
  const Eigenpair e = real_eigenvalues(A);
  return std::fmax(std::fabs(e.lo), std::fabs(e.hi));
}

}  // namespace covhyp
