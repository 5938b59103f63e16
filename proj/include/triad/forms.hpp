#pragma once

#include <array>
#include <vector>

#include "triad/chart.hpp"
#include "triad/field.hpp"
#include "triad/grid.hpp"

namespace triad {

// Differential form of degree 0..3 over the orthonormal coframe, stored as
// coefficient fields on the canonical wedge basis:
//   degree 0: {1}
//   degree 1: {w1, w2, w3}
//   degree 2: {w2^w3, w3^w1, w1^w2}   (cyclic ordering, Hodge-aligned)
//   degree 3: {w1^w2^w3}
class Form {
 public:
  Form() : degree_(0), c_(1) {}

  static Form zero(int degree);
  static Form scalar(ScalarField f);
  static Form one_form(ScalarField a1, ScalarField a2, ScalarField a3);
  static Form two_form(ScalarField m23, ScalarField m31, ScalarField m12);
  static Form top_form(ScalarField f);

  int degree() const { return degree_; }
  int coeff_count() const { return static_cast<int>(c_.size()); }
  const ScalarField& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

 private:
  Form(int degree, std::vector<ScalarField> c) : degree_(degree), c_(std::move(c)) {}

  int degree_;
  std::vector<ScalarField> c_;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator-(const Form& a);
Form operator*(const ScalarField& f, const Form& a);
Form operator*(double c, const Form& a);

// Basis elements: w^k for k in {0,1,2}, and the volume form w1^w2^w3.
Form basis_one_form(int k);
Form volume_form();

// Graded-commutative wedge product; throws AlgebraError if degrees sum past 3.
Form wedge(const Form& a, const Form& b);

// Exterior derivative via the structure equations d w^k = -1/2 C^k_ij w^i^w^j
// and exact coefficient differentials; defined for degrees 0..2.
Form exterior_d(const Form& a, const FrameSpec& spec);

// Hodge star for the orthonormal coframe with *(w1^w2^w3) = orientation.
// In the cyclic degree-2 basis this is the identity on coefficient vectors.
Form hodge_star(const Form& a, const FrameSpec& spec);

// Interior product with the frame vector field whose orthonormal components
// are the coefficients of the degree-1 form v.
Form interior_product(const Form& v, const Form& a);

// Coefficient of the positively-weighted chart measure: for a = f w1^w2^w3
// returns f * sin(nu theta), the integrand of the iterated chart integral.
ScalarField pullback_top(const Form& a, const FrameSpec& spec);

// Pointwise Euclidean norm of the coefficient vector (degrees 1 and 2).
ScalarField form_norm(const Form& a);

// Largest coefficient magnitude of a form over a grid (residual scans).
double max_abs_value(const Form& a, const VerificationGrid& grid);

}  // namespace triad
