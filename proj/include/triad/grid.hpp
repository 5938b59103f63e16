#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "triad/chart.hpp"
#include "triad/field.hpp"

namespace triad {

// Deterministic splitmix64-based generator, used for all randomized checks so
// identical seeds give identical results on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

// Interior point set for identity checks: a 17x17x17 tensor grid plus 200
// Halton points. Theta stays a fixed fraction of the chart away from the
// poles so 1/sin factors remain well conditioned at double precision.
class VerificationGrid {
 public:
  static VerificationGrid standard(const FrameSpec& spec);
  static VerificationGrid halton(const FrameSpec& spec, std::size_t count);
  static VerificationGrid random(const FrameSpec& spec, std::size_t count, std::uint64_t seed);

  std::size_t size() const { return phi_.size(); }
  ChartPoint point(std::size_t i) const { return {phi_[i], theta_[i], psi_[i]}; }

  template <class F>
  void for_each_block(F&& f) const {
    PointBlock blk;
    const std::size_t n = size();
    for (std::size_t off = 0; off < n; off += simd::kBlock) {
      const std::size_t len = std::min(simd::kBlock, n - off);
      blk.assign(phi_.data() + off, theta_.data() + off, psi_.data() + off, len);
      f(blk);
    }
  }

  void push(const ChartPoint& p) {
    phi_.push_back(p.phi);
    theta_.push_back(p.theta);
    psi_.push_back(p.psi);
  }

  // Interior theta margin used when building this grid.
  double theta_inset() const { return inset_; }

 private:
  std::vector<double> phi_, theta_, psi_;
  double inset_ = 0.0;
};

// Largest |value| of a field over a grid.
double max_abs_value(const ScalarField& f, const VerificationGrid& grid);
// Largest |a - b| over a grid.
double max_abs_difference(const ScalarField& a, const ScalarField& b,
                          const VerificationGrid& grid);
bool fields_equal(const ScalarField& a, const ScalarField& b, const VerificationGrid& grid,
                  double tol = 1e-9);

}  // namespace triad
