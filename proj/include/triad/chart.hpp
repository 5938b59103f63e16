#pragma once

#include <array>

#include "triad/field.hpp"

namespace triad {

// Embedding of a chart point into R^4 on the sphere of radius R = 2/nu.
std::array<double, 4> embed(const ChartPoint& p, double nu);

// Manifold descriptor for a parallelizable 3-manifold carrying an orthonormal
// coframe {w^1, w^2, w^3} over the (phi, theta, psi) chart:
//   - structure constants C^k_ij with  d w^k = -1/2 C^k_ij w^i ^ w^j
//   - the coframe matrix (rows: w^k in d_phi, d_theta, d_psi) and its inverse
//   - the chart volume density |det| = sin(nu theta)
// Orientation is fixed by declaring *(w^1^w^2^w^3) = +1. For the built-in
// SU(2) ~ S^3 model the (phi, theta, psi) chart is negatively oriented with
// respect to that convention (det of the coframe matrix is -sin(nu theta));
// integration always weights by the positive density.
class FrameSpec {
 public:
  // Left-invariant coframe on SU(2) ~ S^3 of radius 2/nu, with
  // d w^k = -nu w^{k+1} ^ w^{k+2} (cyclic). theta_margin <= 0 selects the
  // default margin 1e-6/nu around the chart poles nu*theta in {0, pi}.
  static FrameSpec su2(double nu, double theta_margin = 0.0);

  double nu() const { return nu_; }
  double theta_margin() const { return margin_; }
  double phi_extent() const { return phi_extent_; }
  double theta_extent() const { return theta_extent_; }
  double psi_extent() const { return psi_extent_; }
  int orientation() const { return orientation_; }

  double structure_constant(int k, int i, int j) const { return structure_[k][i][j]; }

  const ScalarField& coframe_field(int row, int col) const { return coframe_[row][col]; }
  const ScalarField& frame_field(int row, int col) const { return frame_[row][col]; }
  const ScalarField& jacobian_field() const { return jacobian_; }

  bool is_interior(const ChartPoint& p) const;
  void require_interior(const ChartPoint& p) const;

  // Row k: coefficients of w^k in (d_phi, d_theta, d_psi).
  std::array<std::array<double, 3>, 3> coframe_at(const ChartPoint& p) const;
  // Row j: coefficients of the coordinate differential (d_phi, d_theta,
  // d_psi)[j] in the w basis; the pointwise inverse of coframe_at.
  std::array<std::array<double, 3>, 3> frame_at(const ChartPoint& p) const;
  // Chart density sin(nu theta); the normalized Haar density is this / 16 pi^2.
  double measure_weight(const ChartPoint& p) const;

  // The four R^4 embedding coordinates as fields (smooth global functions).
  std::array<ScalarField, 4> embedding_fields() const;

 private:
  FrameSpec() = default;

  double nu_ = 1.0;
  double margin_ = 1e-6;
  double phi_extent_ = 0.0, theta_extent_ = 0.0, psi_extent_ = 0.0;
  int orientation_ = +1;
  double structure_[3][3][3] = {};
  std::array<std::array<ScalarField, 3>, 3> coframe_;
  std::array<std::array<ScalarField, 3>, 3> frame_;
  ScalarField jacobian_;
};

// Coefficient of w^k in df, i.e. the frame vector field e_k applied to f.
ScalarField frame_derivative(const ScalarField& f, int k, const FrameSpec& spec);

// Analytic total of the normalized Haar density over the chart: 1/nu^3.
// Equals 1 only at nu = 1; callers report the discrepancy rather than
// renormalizing.
double haar_total(double nu);

// Riemannian volume of the sphere of radius 2/nu: 16 pi^2 / nu^3.
double volume_total(double nu);

}  // namespace triad
