#pragma once

#include <cstddef>
#include <optional>

namespace triad::simd {

// Field evaluation runs over fixed-size blocks of points in SoA layout.
// Blocks are padded to a multiple of the vector width with copies of a valid
// lane, so kernels may process the full padded length unconditionally.
inline constexpr std::size_t kBlock = 256;
inline constexpr std::size_t kVectorWidth = 4;

struct DualBlock {
  alignas(32) double v[kBlock];
  alignas(32) double dp[kBlock];
  alignas(32) double dt[kBlock];
  alignas(32) double dq[kBlock];
};

// One entry per pointwise operation on dual blocks, plus the reductions the
// grid scans and quadrature need. `div` and `rsqrt` report the smallest
// denominator magnitude seen so callers can reject near-singular evaluations.
struct KernelSet {
  const char* name;

  void (*add)(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n);
  void (*sub)(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n);
  void (*mul)(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n);
  double (*div)(const DualBlock& a, const DualBlock& b, DualBlock& out, std::size_t n);
  // out0 = c0 + c1*a (derivatives scaled by c1)
  void (*affine)(const DualBlock& a, double c0, double c1, DualBlock& out, std::size_t n);
  void (*sincos)(const DualBlock& a, DualBlock& s, DualBlock& c, std::size_t n);
  // returns min value of a.v over the block (domain guard)
  double (*sqrt_)(const DualBlock& a, DualBlock& out, std::size_t n);

  double (*dot)(const double* w, const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  bool (*all_finite)(const double* x, std::size_t n);
};

enum class Lane { scalar, avx2 };

const KernelSet& scalar_kernels();
bool cpu_has_avx2();
#if defined(TRIAD_HAVE_AVX2)
const KernelSet& avx2_kernels();
#endif

// Active kernel selection: best available lane unless forced by
// force_lane() or the TRIAD_LANE environment variable (scalar|avx2).
const KernelSet& active_kernels();
Lane active_lane();
void force_lane(std::optional<Lane> lane);

}  // namespace triad::simd
