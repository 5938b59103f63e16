#pragma once

#include <cstddef>
#include <vector>

#include "triad/chart.hpp"
#include "triad/field.hpp"

namespace triad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Tensor-product Gauss-Legendre grid over the full chart box
// [0, 2pi/nu] x [0, pi/nu] x [0, 4pi/nu]. Interior Gauss nodes stay clear of
// the theta poles by construction; the margin is still verified.
class QuadratureGrid {
 public:
  static QuadratureGrid tensor(const FrameSpec& spec, int nodes_per_axis);

  int nodes_per_axis() const { return n_; }
  double epsilon() const { return epsilon_; }
  std::size_t size() const {
    return phi_nodes_.size() * theta_nodes_.size() * psi_nodes_.size();
  }

  const std::vector<double>& phi_nodes() const { return phi_nodes_; }
  const std::vector<double>& theta_nodes() const { return theta_nodes_; }
  const std::vector<double>& psi_nodes() const { return psi_nodes_; }
  const std::vector<double>& phi_weights() const { return phi_weights_; }
  const std::vector<double>& theta_weights() const { return theta_weights_; }
  const std::vector<double>& psi_weights() const { return psi_weights_; }

  // Iterates the flattened tensor grid in blocks; w holds the product
  // quadrature weight per lane (zero on padded lanes).
  template <class F>
  void for_each_block(F&& f) const {
    PointBlock blk;
    alignas(32) double w[simd::kBlock];
    const std::size_t np = phi_nodes_.size(), nt = theta_nodes_.size(),
                      nq = psi_nodes_.size();
    const std::size_t total = np * nt * nq;
    std::size_t filled = 0;
    alignas(32) double bp[simd::kBlock], bt[simd::kBlock], bq[simd::kBlock];
    std::size_t flat = 0;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t k = 0; k < nq; ++k) {
          bp[filled] = phi_nodes_[i];
          bt[filled] = theta_nodes_[j];
          bq[filled] = psi_nodes_[k];
          w[filled] = phi_weights_[i] * theta_weights_[j] * psi_weights_[k];
          ++filled;
          ++flat;
          if (filled == simd::kBlock || flat == total) {
            blk.assign(bp, bt, bq, filled);
            for (std::size_t z = filled; z < blk.padded; ++z) w[z] = 0.0;
            f(blk, w);
            filled = 0;
          }
        }
  }

 private:
  int n_ = 0;
  double epsilon_ = 0.0;
  std::vector<double> phi_nodes_, theta_nodes_, psi_nodes_;
  std::vector<double> phi_weights_, theta_weights_, psi_weights_;
};

// Integral of a field against the tensor quadrature (no measure factor).
double integrate_field(const ScalarField& f, const QuadratureGrid& grid);

}  // namespace triad
