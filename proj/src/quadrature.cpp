#include "triad/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "triad/errors.hpp"

namespace triad {

namespace {
constexpr double kPi = std::numbers::pi;

// Newton iteration on the Legendre polynomial, symmetric pairs from the
// Chebyshev initial guess.
void legendre_root(int n, int i, double& x, double& w) {
  double x0 = std::cos(kPi * (i + 0.75) / (n + 0.5));
  double dp = 0.0;
  double dx = 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    double p0 = 1.0, p1 = x0;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x0 * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x0 * p1 - p0) / (x0 * x0 - 1.0);
    const double prev = dx;
    dx = p1 / dp;
    x0 -= dx;
    if (std::fabs(dx) < 1e-16 && std::fabs(prev) < 1e-15) break;
  }
  x = x0;
  w = 2.0 / ((1.0 - x0 * x0) * dp * dp);
}

void map_rule(const GaussRule& rule, double lo, double hi, std::vector<double>& nodes,
              std::vector<double>& weights) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  nodes.resize(rule.nodes.size());
  weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes[i] = mid + half * rule.nodes[i];
    weights[i] = half * rule.weights[i];
  }
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x, w;
    legendre_root(n, i, x, w);
    rule.nodes[i] = -x;  // ascending order
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureGrid QuadratureGrid::tensor(const FrameSpec& spec, int nodes_per_axis) {
  if (nodes_per_axis < 4) throw ConfigError("nodes_per_axis must be at least 4");
  QuadratureGrid g;
  g.n_ = nodes_per_axis;
  g.epsilon_ = spec.theta_margin();
  const GaussRule rule = gauss_legendre(nodes_per_axis);
  map_rule(rule, 0.0, spec.phi_extent(), g.phi_nodes_, g.phi_weights_);
  map_rule(rule, 0.0, spec.theta_extent(), g.theta_nodes_, g.theta_weights_);
  map_rule(rule, 0.0, spec.psi_extent(), g.psi_nodes_, g.psi_weights_);
  for (double t : g.theta_nodes_)
    if (!(t > g.epsilon_ && t < spec.theta_extent() - g.epsilon_))
      throw ConfigError("quadrature theta node violates the singularity margin");
  return g;
}

double integrate_field(const ScalarField& f, const QuadratureGrid& grid) {
  EvalContext ctx;
  // block-wise dot products, Neumaier-compensated across blocks
  double sum = 0.0, comp = 0.0;
  grid.for_each_block([&](const PointBlock& blk, const double* w) {
    ctx.begin(blk);
    const simd::DualBlock& d = ctx.eval(f);
    if (!ctx.kernels().all_finite(d.v, blk.count))
      throw QuadratureError("integrand evaluated to a non-finite value");
    const double part = ctx.kernels().dot(w, d.v, blk.padded);
    const double t = sum + part;
    if (std::fabs(sum) >= std::fabs(part))
      comp += (sum - t) + part;
    else
      comp += (part - t) + sum;
    sum = t;
  });
  return sum + comp;
}

}  // namespace triad
