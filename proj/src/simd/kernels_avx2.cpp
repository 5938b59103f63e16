// AVX2+FMA lane. Compiled with -mavx2 -mfma for this translation unit only;
// selection happens at runtime in dispatch.cpp.

#if defined(TRIAD_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "triad/simd/kernels.hpp"

namespace triad::simd {
namespace {

constexpr std::size_t W = kVectorWidth;

// ---------------------------------------------------------------------------
// sin/cos of 4 doubles. Range reduction is 3-term Cody-Waite against pi/2,
// exact for |k| < 2^20 because PIO2_A carries only 33 significant bits; the
// polynomial kernels are the usual double-precision minimax fits on
// [-pi/4, pi/4]. Arguments beyond |x| > 1e6 fall back to libm lanes.
// ---------------------------------------------------------------------------

constexpr double TWO_OVER_PI = 6.36619772367581382433e-01;
constexpr double PIO2_A = 1.57079632673412561417e+00;
constexpr double PIO2_B = 6.07710050650619224932e-11;
constexpr double PIO2_C = 2.02226624879595063154e-21;
constexpr double BIG_ARG = 1.0e6;

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d poly_sin(__m256d r, __m256d z) {
  __m256d p = _mm256_set1_pd(S6);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S5));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S4));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S3));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S2));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S1));
  // r + r*z*p
  return _mm256_fmadd_pd(_mm256_mul_pd(r, z), p, r);
}

inline __m256d poly_cos(__m256d z) {
  __m256d p = _mm256_set1_pd(C6);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(C5));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(C4));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(C3));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(C2));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(C1));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-0.5));
  return _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0));
}

// Writes sin(x) and cos(x) for 4 lanes.
inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d ax = _mm256_and_pd(x, abs_mask);
  if (_mm256_movemask_pd(_mm256_cmp_pd(ax, _mm256_set1_pd(BIG_ARG), _CMP_GT_OQ))) {
    alignas(32) double xs[W], ss[W], cs[W];
    _mm256_store_pd(xs, x);
    for (std::size_t i = 0; i < W; ++i) {
      ss[i] = std::sin(xs[i]);
      cs[i] = std::cos(xs[i]);
    }
    s_out = _mm256_load_pd(ss);
    c_out = _mm256_load_pd(cs);
    return;
  }

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(TWO_OVER_PI)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(PIO2_A), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(PIO2_B), r);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(PIO2_C), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d ps = poly_sin(r, z);
  const __m256d pc = poly_cos(z);

  const __m256i j = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d odd =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(j, one), one));
  const __m256d sin_neg =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(j, two), two));
  const __m256d cos_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
      _mm256_and_si256(_mm256_add_epi64(j, one), two), two));

  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d s = _mm256_blendv_pd(ps, pc, odd);
  __m256d c = _mm256_blendv_pd(pc, ps, odd);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign));
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign));
  s_out = s;
  c_out = c;
}

// ---------------------------------------------------------------------------
// Dual-block kernels
// ---------------------------------------------------------------------------

void k_add(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; i += W) {
    _mm256_store_pd(out.v + i, _mm256_add_pd(_mm256_load_pd(a.v + i), _mm256_load_pd(b.v + i)));
    _mm256_store_pd(out.dp + i, _mm256_add_pd(_mm256_load_pd(a.dp + i), _mm256_load_pd(b.dp + i)));
    _mm256_store_pd(out.dt + i, _mm256_add_pd(_mm256_load_pd(a.dt + i), _mm256_load_pd(b.dt + i)));
    _mm256_store_pd(out.dq + i, _mm256_add_pd(_mm256_load_pd(a.dq + i), _mm256_load_pd(b.dq + i)));
  }
}

void k_sub(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; i += W) {
    _mm256_store_pd(out.v + i, _mm256_sub_pd(_mm256_load_pd(a.v + i), _mm256_load_pd(b.v + i)));
    _mm256_store_pd(out.dp + i, _mm256_sub_pd(_mm256_load_pd(a.dp + i), _mm256_load_pd(b.dp + i)));
    _mm256_store_pd(out.dt + i, _mm256_sub_pd(_mm256_load_pd(a.dt + i), _mm256_load_pd(b.dt + i)));
    _mm256_store_pd(out.dq + i, _mm256_sub_pd(_mm256_load_pd(a.dq + i), _mm256_load_pd(b.dq + i)));
  }
}

void k_mul(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  for (std::size_t i = 0; i < n; i += W) {
    const __m256d av = _mm256_load_pd(a.v + i), bv = _mm256_load_pd(b.v + i);
    _mm256_store_pd(out.dp + i,
                    _mm256_fmadd_pd(av, _mm256_load_pd(b.dp + i),
                                    _mm256_mul_pd(bv, _mm256_load_pd(a.dp + i))));
    _mm256_store_pd(out.dt + i,
                    _mm256_fmadd_pd(av, _mm256_load_pd(b.dt + i),
                                    _mm256_mul_pd(bv, _mm256_load_pd(a.dt + i))));
    _mm256_store_pd(out.dq + i,
                    _mm256_fmadd_pd(av, _mm256_load_pd(b.dq + i),
                                    _mm256_mul_pd(bv, _mm256_load_pd(a.dq + i))));
    _mm256_store_pd(out.v + i, _mm256_mul_pd(av, bv));
  }
}

double k_div(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d min_den = _mm256_set1_pd(HUGE_VAL);
  for (std::size_t i = 0; i < n; i += W) {
    const __m256d av = _mm256_load_pd(a.v + i), bv = _mm256_load_pd(b.v + i);
    min_den = _mm256_min_pd(min_den, _mm256_and_pd(bv, abs_mask));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), bv);
    const __m256d q = _mm256_mul_pd(av, inv);
    // (da - q*db) / b
    _mm256_store_pd(out.dp + i,
                    _mm256_mul_pd(_mm256_fnmadd_pd(q, _mm256_load_pd(b.dp + i),
                                                   _mm256_load_pd(a.dp + i)),
                                  inv));
    _mm256_store_pd(out.dt + i,
                    _mm256_mul_pd(_mm256_fnmadd_pd(q, _mm256_load_pd(b.dt + i),
                                                   _mm256_load_pd(a.dt + i)),
                                  inv));
    _mm256_store_pd(out.dq + i,
                    _mm256_mul_pd(_mm256_fnmadd_pd(q, _mm256_load_pd(b.dq + i),
                                                   _mm256_load_pd(a.dq + i)),
                                  inv));
    _mm256_store_pd(out.v + i, q);
  }
  alignas(32) double lanes[W];
  _mm256_store_pd(lanes, min_den);
  double m = lanes[0];
  for (std::size_t i = 1; i < W; ++i) m = std::fmin(m, lanes[i]);
  return m;
}

void k_affine(const DualBlock& a, double c0, double c1, DualBlock& out, std::size_t n) {
  const __m256d vc0 = _mm256_set1_pd(c0), vc1 = _mm256_set1_pd(c1);
  for (std::size_t i = 0; i < n; i += W) {
    _mm256_store_pd(out.v + i, _mm256_fmadd_pd(vc1, _mm256_load_pd(a.v + i), vc0));
    _mm256_store_pd(out.dp + i, _mm256_mul_pd(vc1, _mm256_load_pd(a.dp + i)));
    _mm256_store_pd(out.dt + i, _mm256_mul_pd(vc1, _mm256_load_pd(a.dt + i)));
    _mm256_store_pd(out.dq + i, _mm256_mul_pd(vc1, _mm256_load_pd(a.dq + i)));
  }
}

void k_sincos(const DualBlock& a, DualBlock& s, DualBlock& c, std::size_t n) {
  for (std::size_t i = 0; i < n; i += W) {
    __m256d sv, cv;
    sincos4(_mm256_load_pd(a.v + i), sv, cv);
    _mm256_store_pd(s.v + i, sv);
    _mm256_store_pd(c.v + i, cv);
    const __m256d ncv = _mm256_sub_pd(_mm256_setzero_pd(), sv);
    _mm256_store_pd(s.dp + i, _mm256_mul_pd(cv, _mm256_load_pd(a.dp + i)));
    _mm256_store_pd(s.dt + i, _mm256_mul_pd(cv, _mm256_load_pd(a.dt + i)));
    _mm256_store_pd(s.dq + i, _mm256_mul_pd(cv, _mm256_load_pd(a.dq + i)));
    _mm256_store_pd(c.dp + i, _mm256_mul_pd(ncv, _mm256_load_pd(a.dp + i)));
    _mm256_store_pd(c.dt + i, _mm256_mul_pd(ncv, _mm256_load_pd(a.dt + i)));
    _mm256_store_pd(c.dq + i, _mm256_mul_pd(ncv, _mm256_load_pd(a.dq + i)));
  }
}

double k_sqrt(const DualBlock& a, DualBlock& out, std::size_t n) {
  __m256d min_val = _mm256_set1_pd(HUGE_VAL);
  const __m256d half = _mm256_set1_pd(0.5);
  for (std::size_t i = 0; i < n; i += W) {
    const __m256d av = _mm256_load_pd(a.v + i);
    min_val = _mm256_min_pd(min_val, av);
    const __m256d r = _mm256_sqrt_pd(av);
    const __m256d g = _mm256_div_pd(half, r);
    _mm256_store_pd(out.v + i, r);
    _mm256_store_pd(out.dp + i, _mm256_mul_pd(g, _mm256_load_pd(a.dp + i)));
    _mm256_store_pd(out.dt + i, _mm256_mul_pd(g, _mm256_load_pd(a.dt + i)));
    _mm256_store_pd(out.dq + i, _mm256_mul_pd(g, _mm256_load_pd(a.dq + i)));
  }
  alignas(32) double lanes[W];
  _mm256_store_pd(lanes, min_val);
  double m = lanes[0];
  for (std::size_t i = 1; i < W; ++i) m = std::fmin(m, lanes[i]);
  return m;
}

double k_dot(const double* w, const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + W <= n; i += W)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc);
  alignas(32) double lanes[W];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += w[i] * x[i];
  return s;
}

double k_max_abs(const double* x, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + W <= n; i += W)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), abs_mask));
  alignas(32) double lanes[W];
  _mm256_store_pd(lanes, acc);
  double m = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

bool k_all_finite(const double* x, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d inf = _mm256_set1_pd(HUGE_VAL);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m256d ax = _mm256_and_pd(_mm256_loadu_pd(x + i), abs_mask);
    // NaN compares false against everything, so it fails this test too
    if (_mm256_movemask_pd(_mm256_cmp_pd(ax, inf, _CMP_LT_OQ)) != 0xf) return false;
  }
  for (; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace

const KernelSet& avx2_kernels() {
  static const KernelSet ks = {
      "avx2",   k_add,  k_sub, k_mul,     k_div,       k_affine,
      k_sincos, k_sqrt, k_dot, k_max_abs, k_all_finite,
  };
  return ks;
}

}  // namespace triad::simd

#endif  // TRIAD_HAVE_AVX2
