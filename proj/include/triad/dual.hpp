#pragma once

#include <cmath>

namespace triad {

// Forward-mode dual number carrying the value of a chart function together
// with its three exact partial derivatives d/dphi, d/dtheta, d/dpsi.
struct Dual3 {
  double v = 0.0;
  double dp = 0.0;  // d/dphi
  double dt = 0.0;  // d/dtheta
  double dq = 0.0;  // d/dpsi

  static constexpr Dual3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
};

inline Dual3 operator+(const Dual3& a, const Dual3& b) {
  return {a.v + b.v, a.dp + b.dp, a.dt + b.dt, a.dq + b.dq};
}

inline Dual3 operator-(const Dual3& a, const Dual3& b) {
  return {a.v - b.v, a.dp - b.dp, a.dt - b.dt, a.dq - b.dq};
}

inline Dual3 operator-(const Dual3& a) { return {-a.v, -a.dp, -a.dt, -a.dq}; }

inline Dual3 operator*(const Dual3& a, const Dual3& b) {
  return {a.v * b.v,
          a.v * b.dp + b.v * a.dp,
          a.v * b.dt + b.v * a.dt,
          a.v * b.dq + b.v * a.dq};
}

inline Dual3 operator/(const Dual3& a, const Dual3& b) {
  const double q = a.v / b.v;
  const double r = 1.0 / b.v;
  return {q, (a.dp - q * b.dp) * r, (a.dt - q * b.dt) * r, (a.dq - q * b.dq) * r};
}

inline Dual3 affine(const Dual3& a, double c0, double c1) {
  return {c0 + c1 * a.v, c1 * a.dp, c1 * a.dt, c1 * a.dq};
}

inline Dual3 sin(const Dual3& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return {s, c * a.dp, c * a.dt, c * a.dq};
}

inline Dual3 cos(const Dual3& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return {c, -s * a.dp, -s * a.dt, -s * a.dq};
}

inline Dual3 sqrt(const Dual3& a) {
  const double r = std::sqrt(a.v);
  const double g = 0.5 / r;
  return {r, g * a.dp, g * a.dt, g * a.dq};
}

}  // namespace triad
