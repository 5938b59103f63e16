// Acceptance suite: the six gate criteria, one PASS/FAIL line each.
// Exit status 0 iff every criterion holds at its stated tolerance.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "triad/obstruction.hpp"
#include "triad/report.hpp"

using namespace triad;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void criterion(int n, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %d [%s]: %s (%s)\n", n, name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Model {
  FrameSpec spec;
  VerificationGrid grid;
  PoissonPair pair;
  ConnectionSolution c1, c2;

  explicit Model(double nu, GaugePreset t1 = GaugePreset::paper(),
                 GaugePreset t2 = GaugePreset::paper())
      : spec(FrameSpec::su2(nu)),
        grid(VerificationGrid::standard(spec)),
        pair(build_poisson_pair(spec)),
        c1(solve_connection(pair.j1_hat, t1.field(0, spec), spec, grid)),
        c2(solve_connection(pair.j2_hat, t2.field(1, spec), spec, grid)) {}
};

// ---------------------------------------------------------------------------

void criterion_1_eigenvalue() {
  double worst = 0.0;
  bool ok = true;
  for (double nu : {0.5, 1.0, 2.0}) {
    const FrameSpec spec = FrameSpec::su2(nu);
    const VerificationGrid grid = VerificationGrid::standard(spec);
    const auto lambda = eigenvalue_check(basis_one_form(2), spec, grid);
    if (!lambda) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::fabs(*lambda + nu));
  }
  ok = ok && worst < 1e-10;
  criterion(1, "curl eigenvalue", ok,
            fmt("max |lambda + nu| = %.3e over nu in {0.5, 1, 2}, bound 1e-10", worst));
}

void criterion_2_xi_integral() {
  double worst = 0.0;
  for (double nu : {0.5, 1.0, 2.0}) {
    const Model m(nu);
    const QuadratureGrid quad = QuadratureGrid::tensor(m.spec, 32);
    const double value =
        integrate_top(xi_form(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat), quad, m.spec);
    worst = std::max(worst, std::fabs(value - xi_target(nu)) / xi_target(nu));
  }
  criterion(2, "xi integral 8 pi^3 / nu^2", worst < 1e-8,
            fmt("max rel err = %.3e at 32^3 nodes over nu in {0.5, 1, 2}, bound 1e-8", worst));
}

void criterion_3_bott() {
  double worst_point = 0.0, worst_rel = 0.0;
  for (double nu : {0.5, 1.0, 2.0}) {
    const Model m(nu);  // paper gauge, b11 = b22 = 1
    const QuadratureGrid quad = QuadratureGrid::tensor(m.spec, 32);
    const BottClass b = bott_class(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat, m.spec, quad);
    worst_point = std::max(
        worst_point,
        max_abs_difference(b.beta.coeff(0), ScalarField::constant(0.5 * nu), m.grid));
    const double target = 8.0 * kPi * kPi / (nu * nu);
    worst_rel = std::max(worst_rel, std::fabs(b.integral - target) / target);
  }
  criterion(3, "bott representative nu/2 and integral 8 pi^2 / nu^2",
            worst_point < 1e-9 && worst_rel < 1e-8,
            fmt("max |beta - nu/2| = %.3e (bound 1e-9), max rel err = %.3e (bound 1e-8)",
                worst_point, worst_rel));
}

void criterion_4_identities() {
  const double nu = 1.0;
  const Model m(nu);
  const FrameSpec& spec = m.spec;
  const VerificationGrid& grid = m.grid;
  const ScalarField th = ScalarField::coordinate(Axis::theta);
  const ScalarField ps = ScalarField::coordinate(Axis::psi);
  const ScalarField sh = sin(0.5 * nu * th), ch = cos(0.5 * nu * th);

  std::vector<std::pair<std::string, double>> items;

  {  // Maurer-Cartan
    double r = 0.0;
    for (int k = 0; k < 3; ++k)
      r = std::max(r, max_abs_value(exterior_d(basis_one_form(k), spec) +
                                        nu * wedge(basis_one_form((k + 1) % 3),
                                                   basis_one_form((k + 2) % 3)),
                                    grid));
    items.emplace_back("maurer-cartan", r);
  }
  {  // Hodge duality
    double r = 0.0;
    for (int k = 0; k < 3; ++k)
      r = std::max(r, max_abs_value(hodge_star(basis_one_form(k), spec) -
                                        wedge(basis_one_form((k + 1) % 3),
                                              basis_one_form((k + 2) % 3)),
                                    grid));
    items.emplace_back("hodge-duality", r);
  }
  {  // d∘d = 0
    Rng rng(4001);
    double r = 0.0;
    const ScalarField f = sin(nu * th) * cos(nu * ps);
    r = std::max(r, max_abs_value(exterior_d(exterior_d(Form::scalar(f), spec), spec), grid));
    for (int trial = 0; trial < 3; ++trial) {
      const Form a = Form::one_form(sin(nu * th) * ScalarField::constant(rng.uniform(-1, 1)),
                                    cos(nu * ps) * ScalarField::constant(rng.uniform(-1, 1)),
                                    sh * ScalarField::constant(rng.uniform(-1, 1)));
      r = std::max(r, max_abs_value(exterior_d(exterior_d(a, spec), spec), grid));
    }
    items.emplace_back("d-squared", r);
  }
  {  // graded Leibniz
    Rng rng(4002);
    double r = 0.0;
    const Form a0 = Form::scalar(sin(nu * th) + 0.3 * cos(nu * ps));
    const Form a1 = Form::one_form(cos(nu * ps), sh, sin(nu * th));
    const Form b1 = Form::one_form(sh * sin(nu * ps), ch, ScalarField::constant(0.4));
    const Form b2 = Form::two_form(cos(nu * th), sin(nu * ps), ch);
    r = std::max(r, max_abs_value(exterior_d(wedge(a0, b1), spec) -
                                      (wedge(exterior_d(a0, spec), b1) +
                                       wedge(a0, exterior_d(b1, spec))),
                                  grid));
    r = std::max(r, max_abs_value(exterior_d(wedge(a1, b1), spec) -
                                      (wedge(exterior_d(a1, spec), b1) -
                                       wedge(a1, exterior_d(b1, spec))),
                                  grid));
    r = std::max(r, max_abs_value(exterior_d(wedge(a0, b2), spec) -
                                      (wedge(exterior_d(a0, spec), b2) +
                                       wedge(a0, exterior_d(b2, spec))),
                                  grid));
    items.emplace_back("graded-leibniz", r);
  }
  {  // norms of the Poisson one-forms
    double r = max_abs_difference(form_norm(m.pair.J1), 0.5 * nu / ch, grid);
    r = std::max(r, max_abs_difference(form_norm(m.pair.J2), 0.5 * nu / sh, grid));
    items.emplace_back("poisson-norms", r);
  }
  {  // d j_hat closed forms
    const Form dj1 =
        0.5 * nu * Form::two_form(sin(nu * ps) * sh, cos(nu * ps) * sh, -sh * sh / ch);
    const Form dj2 =
        0.5 * nu * Form::two_form(sin(nu * ps) * ch, cos(nu * ps) * ch, ch * ch / sh);
    double r = max_abs_value(exterior_d(m.pair.j1_hat, spec) - dj1, grid);
    r = std::max(r, max_abs_value(exterior_d(m.pair.j2_hat, spec) - dj2, grid));
    items.emplace_back("unit-section-differentials", r);
  }
  {  // d j ^ j = 0
    double r = jacobi_check(m.pair.j1_hat, spec, grid);
    r = std::max(r, jacobi_check(m.pair.j2_hat, spec, grid));
    items.emplace_back("unit-section-jacobi", r);
  }
  {  // dJ_i = 0 (exactness)
    double r = max_abs_value(exterior_d(m.pair.J1, spec), grid);
    r = std::max(r, max_abs_value(exterior_d(m.pair.J2, spec), grid));
    items.emplace_back("poisson-closed", r);
  }
  items.emplace_back("pair-compatibility",
                     compatibility_check(m.pair.J1, m.pair.J2, spec, grid));
  {  // connection residuals
    items.emplace_back("connection-residual", std::max(m.c1.residual, m.c2.residual));
  }
  {  // d(Gamma1 + Gamma2) = 0: honest derivative at constant gauges plus the
     // closure decomposition at the verification gauge
    double r = connection_closure_residual(m.c1, m.c2, spec, grid);
    Rng rng(4003);
    for (int trial = 0; trial < 3; ++trial) {
      const Model c(nu, GaugePreset::constant(rng.uniform(-2, 2)),
                    GaugePreset::constant(rng.uniform(-2, 2)));
      r = std::max(r, max_abs_value(exterior_d(c.c1.gamma + c.c2.gamma, spec), c.grid));
    }
    items.emplace_back("connection-sum-closed", r);
  }
  {  // curvature trace against the Chern representative
    const ScalarField one = ScalarField::constant(1.0);
    const std::array<std::array<ScalarField, 2>, 2> b = {
        {{one, ScalarField::constant(0.4)}, {ScalarField::constant(-0.7), one}}};
    const CurvatureResult k =
        curvature_and_chern(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat, b, spec, grid);
    items.emplace_back("chern-trace", k.trace_residual);
  }
  {  // j1 ^ j2 display
    const Form expect = Form::two_form(-cos(nu * ps), sin(nu * ps), ScalarField::constant(0.0));
    items.emplace_back("section-wedge",
                       max_abs_value(wedge(m.pair.j1_hat, m.pair.j2_hat) - expect, grid));
  }
  {  // xi coefficient and gauge independence
    const Form xi = xi_form(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat);
    double r = max_abs_difference(xi.coeff(0), nu / sin(nu * th), grid);
    Rng rng(4004);
    for (int trial = 0; trial < 5; ++trial) {
      const Model g(nu, GaugePreset::constant(rng.uniform(-5, 5)),
                    GaugePreset::constant(rng.uniform(-5, 5)));
      const Form other = xi_form(g.c1, g.c2, g.pair.j1_hat, g.pair.j2_hat);
      r = std::max(r, max_abs_difference(pullback_top(other, spec),
                                         pullback_top(xi, spec), grid));
    }
    items.emplace_back("xi-coefficient-and-gauge", r);
  }

  double worst = 0.0;
  std::string worst_name;
  for (const auto& [name, r] : items) {
    if (r > worst) {
      worst = r;
      worst_name = name;
    }
  }
  criterion(4, "identity suite", worst < 1e-9,
            fmt(("14 identities, worst residual %.3e (" + worst_name + "), bound 1e-9").c_str(),
                worst));
}

void criterion_5_incompatibility_witness() {
  const Model m(1.0);
  const double witness =
      compatibility_check(m.pair.j1_hat, m.pair.j2_hat, m.spec, m.grid);
  const QuadratureGrid quad = QuadratureGrid::tensor(m.spec, 32);
  // the obstruction integral is far from zero while exact forms integrate to
  // zero, so xi cannot be exact on the closed manifold
  const double xi_value =
      integrate_top(xi_form(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat), quad, m.spec);
  Rng rng(5001);
  double stokes = 0.0;
  const auto x = m.spec.embedding_fields();
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField c[3];
    for (auto& f : c) {
      f = ScalarField::constant(rng.uniform(-1, 1));
      for (int i = 0; i < 4; ++i) f = f + (0.2 * rng.uniform(-1, 1)) * x[i];
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) f = f + (0.1 * rng.uniform(-1, 1)) * (x[i] * x[j]);
    }
    const Form b = Form::two_form(c[0], c[1], c[2]);
    stokes = std::max(stokes, std::fabs(integrate_top(exterior_d(b, m.spec), quad, m.spec)));
  }
  criterion(5, "incompatibility witness with stokes sanity",
            witness >= 0.1 * m.spec.nu() && xi_value > 100.0 && stokes < 1e-7,
            fmt("unit-section residual %.4g >= 0.1 nu, xi integral %.4g > 100, "
                "max |int d(global 2-form)| = %.3e < 1e-7",
                witness, xi_value, stokes));
}

void criterion_6_convergence() {
  const Model m(1.0);
  const Form xi = xi_form(m.c1, m.c2, m.pair.j1_hat, m.pair.j2_hat);
  const double v16 =
      integrate_top(xi, QuadratureGrid::tensor(m.spec, 16), m.spec);
  const double v32 =
      integrate_top(xi, QuadratureGrid::tensor(m.spec, 32), m.spec);
  const double rel = std::fabs(v16 - v32) / std::fabs(v32);
  criterion(6, "quadrature convergence", rel < 1e-9,
            fmt("|xi(16^3) - xi(32^3)| / |xi(32^3)| = %.3e, bound 1e-9", rel));
}

}  // namespace

int main() {
  criterion_1_eigenvalue();
  criterion_2_xi_integral();
  criterion_3_bott();
  criterion_4_identities();
  criterion_5_incompatibility_witness();
  criterion_6_convergence();
  if (g_failures) {
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 6 criteria PASS\n");
  return 0;
}
