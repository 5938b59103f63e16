#include <cstdlib>
#include <cstring>
#include <optional>

#include "triad/errors.hpp"
#include "triad/simd/kernels.hpp"

namespace triad::simd {
namespace {

std::optional<Lane> g_forced;

std::optional<Lane> env_lane() {
  const char* s = std::getenv("TRIAD_LANE");
  if (!s) return std::nullopt;
  if (std::strcmp(s, "scalar") == 0) return Lane::scalar;
  if (std::strcmp(s, "avx2") == 0) return Lane::avx2;
  return std::nullopt;
}

Lane pick() {
  if (g_forced) return *g_forced;
  if (auto e = env_lane()) return *e;
#if defined(TRIAD_HAVE_AVX2)
  if (cpu_has_avx2()) return Lane::avx2;
#endif
  return Lane::scalar;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet& active_kernels() {
  switch (pick()) {
#if defined(TRIAD_HAVE_AVX2)
    case Lane::avx2:
      if (cpu_has_avx2()) return avx2_kernels();
      return scalar_kernels();
#else
    case Lane::avx2:
      return scalar_kernels();
#endif
    case Lane::scalar:
    default:
      return scalar_kernels();
  }
}

Lane active_lane() {
  return std::strcmp(active_kernels().name, "avx2") == 0 ? Lane::avx2 : Lane::scalar;
}

void force_lane(std::optional<Lane> lane) {
#if !defined(TRIAD_HAVE_AVX2)
  if (lane == Lane::avx2) throw ConfigError("avx2 lane not built on this platform");
#else
  if (lane == Lane::avx2 && !cpu_has_avx2())
    throw ConfigError("avx2 lane not supported by this cpu");
#endif
  g_forced = lane;
}

}  // namespace triad::simd
