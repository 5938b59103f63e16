#include "triad/grid.hpp"

#include <algorithm>
#include <cmath>

namespace triad {

namespace {

double halton_value(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

double grid_inset(const FrameSpec& spec) {
  return std::max(spec.theta_margin(), 1e-3 * spec.theta_extent());
}

}  // namespace

VerificationGrid VerificationGrid::standard(const FrameSpec& spec) {
  VerificationGrid g;
  g.inset_ = grid_inset(spec);
  const int n = 17;
  const double lo = g.inset_, hi = spec.theta_extent() - g.inset_;
  for (int i = 0; i < n; ++i) {
    const double phi = (i + 0.5) / n * spec.phi_extent();
    for (int j = 0; j < n; ++j) {
      const double theta = lo + (j + 0.5) / n * (hi - lo);
      for (int k = 0; k < n; ++k) {
        const double psi = (k + 0.5) / n * spec.psi_extent();
        g.push({phi, theta, psi});
      }
    }
  }
  for (std::size_t i = 1; i <= 200; ++i) {
    g.push({halton_value(i, 2) * spec.phi_extent(), lo + halton_value(i, 3) * (hi - lo),
            halton_value(i, 5) * spec.psi_extent()});
  }
  return g;
}

VerificationGrid VerificationGrid::halton(const FrameSpec& spec, std::size_t count) {
  VerificationGrid g;
  g.inset_ = grid_inset(spec);
  const double lo = g.inset_, hi = spec.theta_extent() - g.inset_;
  for (std::size_t i = 1; i <= count; ++i) {
    g.push({halton_value(i, 2) * spec.phi_extent(), lo + halton_value(i, 3) * (hi - lo),
            halton_value(i, 5) * spec.psi_extent()});
  }
  return g;
}

VerificationGrid VerificationGrid::random(const FrameSpec& spec, std::size_t count,
                                          std::uint64_t seed) {
  VerificationGrid g;
  g.inset_ = grid_inset(spec);
  Rng rng(seed);
  const double lo = g.inset_, hi = spec.theta_extent() - g.inset_;
  for (std::size_t i = 0; i < count; ++i) {
    g.push({rng.uniform(0.0, spec.phi_extent()), rng.uniform(lo, hi),
            rng.uniform(0.0, spec.psi_extent())});
  }
  return g;
}

double max_abs_value(const ScalarField& f, const VerificationGrid& grid) {
  EvalContext ctx;
  double m = 0.0;
  grid.for_each_block([&](const PointBlock& blk) {
    ctx.begin(blk);
    const simd::DualBlock& d = ctx.eval(f);
    m = std::max(m, ctx.kernels().max_abs(d.v, blk.count));
  });
  return m;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b,
                          const VerificationGrid& grid) {
  EvalContext ctx;
  double m = 0.0;
  grid.for_each_block([&](const PointBlock& blk) {
    ctx.begin(blk);
    const simd::DualBlock& da = ctx.eval(a);
    const simd::DualBlock& db = ctx.eval(b);
    for (std::size_t i = 0; i < blk.count; ++i)
      m = std::max(m, std::fabs(da.v[i] - db.v[i]));
  });
  return m;
}

bool fields_equal(const ScalarField& a, const ScalarField& b, const VerificationGrid& grid,
                  double tol) {
  return max_abs_difference(a, b, grid) < tol;
}

}  // namespace triad
