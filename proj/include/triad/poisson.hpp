#pragma once

#include <optional>

#include "triad/forms.hpp"

namespace triad {

// The concrete pair of local Poisson one-forms on SU(2) and their unit
// sections. H1, H2 are chart-local Hamiltonians (multivalued on the sphere:
// phi and psi are angles); no global-function claim is made for them.
struct PoissonPair {
  Form J1, J2;
  Form j1_hat, j2_hat;
  ScalarField H1, H2;
};

PoissonPair build_poisson_pair(const FrameSpec& spec);

// *d of a one-form.
Form curl(const Form& a, const FrameSpec& spec);

// If curl(a) = lambda * a pointwise for one constant lambda, returns lambda;
// otherwise nullopt. `a` must be bounded away from zero on the grid.
std::optional<double> eigenvalue_check(const Form& a, const FrameSpec& spec,
                                       const VerificationGrid& grid, double tol = 1e-8);

// max over the grid of |top coefficient of dJ ^ J| (the Jacobi residual).
double jacobi_check(const Form& J, const FrameSpec& spec, const VerificationGrid& grid);

// max over the grid of |top coefficient of J1 ^ dJ2 + J2 ^ dJ1|.
double compatibility_check(const Form& J1, const Form& J2, const FrameSpec& spec,
                           const VerificationGrid& grid);

// Solution of d j_hat = Gamma ^ j_hat with the w3 coefficient of Gamma pinned
// to the gauge field t. The solution is affine in the gauge:
//     Gamma = gamma_base + t * gauge_direction,
// where gauge_direction spans the kernel of (.)^j_hat, scaled to w3
// coefficient 1, and d(gauge_direction) = 0 for the concrete sphere data.
struct ConnectionSolution {
  Form gamma;
  Form gamma_base;
  Form gauge_direction;
  ScalarField t;
  double residual = 0.0;  // max over the grid of |d j_hat - Gamma ^ j_hat|
};

// Throws SolveError if the integrability residual d j_hat ^ j_hat is not
// negligible (the pinned system is then inconsistent) or if the pointwise
// 2x2 system determinant (the squared w3 coefficient of j_hat) falls under
// 1e-12 anywhere on the grid.
ConnectionSolution solve_connection(const Form& j_hat, const ScalarField& t,
                                    const FrameSpec& spec, const VerificationGrid& grid);

}  // namespace triad
