// Reference kernels. These are the semantics the vector lanes must match;
// keep them boring.

#include <cmath>
#include <cstddef>

#include "triad/dual.hpp"
#include "triad/simd/kernels.hpp"

namespace triad::simd {
namespace {

inline Dual3 load(const DualBlock& b, std::size_t i) {
  return {b.v[i], b.dp[i], b.dt[i], b.dq[i]};
}

inline void store(DualBlock& b, std::size_t i, const Dual3& d) {
  b.v[i] = d.v;
  b.dp[i] = d.dp;
  b.dt[i] = d.dt;
  b.dq[i] = d.dq;
}

void k_add(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store(out, i, load(a, i) + load(b, i));
}

void k_sub(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store(out, i, load(a, i) - load(b, i));
}

void k_mul(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store(out, i, load(a, i) * load(b, i));
}

double k_div(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  double min_den = HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    min_den = std::fmin(min_den, std::fabs(b.v[i]));
    store(out, i, load(a, i) / load(b, i));
  }
  return min_den;
}

void k_affine(const DualBlock& a, double c0, double c1, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) store(out, i, affine(load(a, i), c0, c1));
}

void k_sincos(const DualBlock& a, DualBlock& s, DualBlock& c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const Dual3 x = load(a, i);
    store(s, i, sin(x));
    store(c, i, cos(x));
  }
}

double k_sqrt(const DualBlock& a, DualBlock& out, std::size_t n) {
  double min_val = HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    min_val = std::fmin(min_val, a.v[i]);
    store(out, i, sqrt(load(a, i)));
  }
  return min_val;
}

double k_dot(const double* w, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i];
  return acc;
}

double k_max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

bool k_all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet ks = {
      "scalar", k_add,  k_sub, k_mul,     k_div,       k_affine,
      k_sincos, k_sqrt, k_dot, k_max_abs, k_all_finite,
  };
  return ks;
}

}  // namespace triad::simd
