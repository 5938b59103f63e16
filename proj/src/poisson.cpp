#include "triad/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "triad/errors.hpp"

namespace triad {

PoissonPair build_poisson_pair(const FrameSpec& spec) {
  const double nu = spec.nu();
  const ScalarField ph = ScalarField::coordinate(Axis::phi);
  const ScalarField th = ScalarField::coordinate(Axis::theta);
  const ScalarField ps = ScalarField::coordinate(Axis::psi);

  const ScalarField s_th = sin(nu * th), c_th = cos(nu * th);
  const ScalarField s_ps = sin(nu * ps), c_ps = cos(nu * ps);
  const ScalarField sh = sin(0.5 * nu * th), ch = cos(0.5 * nu * th);

  PoissonPair p;
  p.H1 = 0.5 * nu * (ph + ps);
  p.H2 = 0.5 * nu * (ph - ps);

  const ScalarField lo = (1.0 - c_th) / s_th;  // tan(nu theta / 2)
  const ScalarField hi = (1.0 + c_th) / s_th;  // cot(nu theta / 2)
  p.J1 = Form::one_form(0.5 * nu * s_ps * lo, 0.5 * nu * c_ps * lo,
                        ScalarField::constant(0.5 * nu));
  p.J2 = Form::one_form(0.5 * nu * s_ps * hi, 0.5 * nu * c_ps * hi,
                        ScalarField::constant(-0.5 * nu));

  p.j1_hat = Form::one_form(s_ps * sh, c_ps * sh, ch);
  p.j2_hat = Form::one_form(s_ps * ch, c_ps * ch, -sh);
  return p;
}

Form curl(const Form& a, const FrameSpec& spec) {
  if (a.degree() != 1) throw AlgebraError("curl acts on one-forms");
  return hodge_star(exterior_d(a, spec), spec);
}

std::optional<double> eigenvalue_check(const Form& a, const FrameSpec& spec,
                                       const VerificationGrid& grid, double tol) {
  const Form c = curl(a, spec);
  // least-squares pointwise ratio, then a proportionality residual scan
  const ScalarField num = interior_product(c, a).coeff(0);
  const ScalarField den = interior_product(a, a).coeff(0);

  EvalContext ctx;
  double lambda_sum = 0.0;
  std::size_t count = 0;
  double min_norm2 = HUGE_VAL;
  grid.for_each_block([&](const PointBlock& blk) {
    ctx.begin(blk);
    const simd::DualBlock& n = ctx.eval(num);
    const simd::DualBlock& d = ctx.eval(den);
    for (std::size_t i = 0; i < blk.count; ++i) {
      min_norm2 = std::min(min_norm2, d.v[i]);
      lambda_sum += n.v[i] / d.v[i];
      ++count;
    }
  });
  if (min_norm2 < 1e-12) return std::nullopt;  // nonvanishing precondition
  const double lambda = lambda_sum / double(count);

  const double scale = std::max(1.0, max_abs_value(a, grid));
  const double res = max_abs_value(c - ScalarField::constant(lambda) * a, grid);
  if (res < tol * scale) return lambda;
  return std::nullopt;
}

double jacobi_check(const Form& J, const FrameSpec& spec, const VerificationGrid& grid) {
  if (J.degree() != 1) throw AlgebraError("jacobi_check acts on one-forms");
  return max_abs_value(wedge(exterior_d(J, spec), J), grid);
}

double compatibility_check(const Form& J1, const Form& J2, const FrameSpec& spec,
                           const VerificationGrid& grid) {
  if (J1.degree() != 1 || J2.degree() != 1)
    throw AlgebraError("compatibility_check acts on one-forms");
  const Form mixed = wedge(J1, exterior_d(J2, spec)) + wedge(J2, exterior_d(J1, spec));
  return max_abs_value(mixed, grid);
}

ConnectionSolution solve_connection(const Form& j_hat, const ScalarField& t,
                                    const FrameSpec& spec, const VerificationGrid& grid) {
  if (j_hat.degree() != 1) throw AlgebraError("solve_connection acts on one-forms");

  const Form dj = exterior_d(j_hat, spec);

  // Integrability: the pinned system cross(g, a) = m is solvable iff m.a = 0.
  const double integrability = max_abs_value(wedge(dj, j_hat), grid);
  const double scale = std::max(1.0, max_abs_value(dj, grid));
  if (integrability > 1e-8 * scale) {
    std::ostringstream os;
    os << "connection system inconsistent: d j ^ j residual " << integrability
       << " (Jacobi identity fails for this section)";
    throw SolveError(os.str());
  }

  // Pinning g3 = t leaves a diagonal 2x2 system with determinant a3^2.
  const ScalarField a1 = j_hat.coeff(0), a2 = j_hat.coeff(1), a3 = j_hat.coeff(2);
  const double min_a3 = [&] {
    EvalContext ctx;
    double m = HUGE_VAL;
    grid.for_each_block([&](const PointBlock& blk) {
      ctx.begin(blk);
      const simd::DualBlock& d = ctx.eval(a3);
      for (std::size_t i = 0; i < blk.count; ++i) m = std::min(m, std::fabs(d.v[i]));
    });
    return m;
  }();
  if (min_a3 * min_a3 < 1e-12) {
    std::ostringstream os;
    os << "connection solve ill-conditioned: pointwise system determinant "
       << min_a3 * min_a3 << " below 1e-12 (w3 coefficient of the section vanishes)";
    throw SolveError(os.str());
  }

  const ScalarField m1 = dj.coeff(0), m2 = dj.coeff(1);
  ConnectionSolution sol;
  sol.t = t;
  sol.gamma_base = Form::one_form(-m2 / a3, m1 / a3, ScalarField::constant(0.0));
  sol.gauge_direction = Form::one_form(a1 / a3, a2 / a3, ScalarField::constant(1.0));
  sol.gamma = sol.gamma_base + t * sol.gauge_direction;
  sol.residual = max_abs_value(dj - wedge(sol.gamma, j_hat), grid);
  return sol;
}

}  // namespace triad
