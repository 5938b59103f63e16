#include "triad/chart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "triad/errors.hpp"

namespace triad {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::array<double, 4> embed(const ChartPoint& p, double nu) {
  const double R = 2.0 / nu;
  const double h = 0.5 * nu * p.theta;
  const double a = 0.5 * nu * (p.phi + p.psi);
  const double b = 0.5 * nu * (p.phi - p.psi);
  return {R * std::cos(h) * std::cos(a), R * std::cos(h) * std::sin(a),
          R * std::sin(h) * std::cos(b), R * std::sin(h) * std::sin(b)};
}

FrameSpec FrameSpec::su2(double nu, double theta_margin) {
  if (!(nu > 0.0)) throw ConfigError("nu must be positive");
  FrameSpec s;
  s.nu_ = nu;
  s.margin_ = theta_margin > 0.0 ? theta_margin : 1e-6 / nu;
  s.phi_extent_ = 2.0 * kPi / nu;
  s.theta_extent_ = kPi / nu;
  s.psi_extent_ = 4.0 * kPi / nu;
  s.orientation_ = +1;

  // d w^k = -nu w^{k+1} ^ w^{k+2}  =>  C^k_ij = nu eps_kij
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    s.structure_[k][i][j] = nu;
    s.structure_[k][j][i] = -nu;
  }

  const ScalarField th = ScalarField::coordinate(Axis::theta);
  const ScalarField ps = ScalarField::coordinate(Axis::psi);
  const ScalarField s_th = sin(nu * th), c_th = cos(nu * th);
  const ScalarField s_ps = sin(nu * ps), c_ps = cos(nu * ps);
  const ScalarField zero = ScalarField::constant(0.0);
  const ScalarField one = ScalarField::constant(1.0);

  s.coframe_[0] = {s_th * s_ps, c_ps, zero};
  s.coframe_[1] = {s_th * c_ps, -s_ps, zero};
  s.coframe_[2] = {c_th, zero, one};

  const ScalarField cot_th = c_th / s_th;
  s.frame_[0] = {s_ps / s_th, c_ps / s_th, zero};
  s.frame_[1] = {c_ps, -s_ps, zero};
  s.frame_[2] = {-s_ps * cot_th, -c_ps * cot_th, one};

  s.jacobian_ = s_th;
  return s;
}

bool FrameSpec::is_interior(const ChartPoint& p) const {
  return p.theta > margin_ && p.theta < theta_extent_ - margin_ && std::isfinite(p.phi) &&
         std::isfinite(p.psi);
}

void FrameSpec::require_interior(const ChartPoint& p) const {
  if (!is_interior(p)) {
    std::ostringstream os;
    os << "chart point theta=" << p.theta << " within margin " << margin_
       << " of a pole (valid open range (" << margin_ << ", " << theta_extent_ - margin_
       << "))";
    throw ChartError(os.str());
  }
}

std::array<std::array<double, 3>, 3> FrameSpec::coframe_at(const ChartPoint& p) const {
  require_interior(p);
  std::array<std::array<double, 3>, 3> m;
  thread_local EvalContext ctx;
  thread_local PointBlock blk;
  blk.assign(p);
  ctx.begin(blk);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = ctx.eval(coframe_[r][c]).v[0];
  return m;
}

std::array<std::array<double, 3>, 3> FrameSpec::frame_at(const ChartPoint& p) const {
  require_interior(p);
  std::array<std::array<double, 3>, 3> m;
  thread_local EvalContext ctx;
  thread_local PointBlock blk;
  blk.assign(p);
  ctx.begin(blk);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = ctx.eval(frame_[r][c]).v[0];
  return m;
}

double FrameSpec::measure_weight(const ChartPoint& p) const {
  return std::sin(nu_ * p.theta);
}

std::array<ScalarField, 4> FrameSpec::embedding_fields() const {
  const double R = 2.0 / nu_;
  const ScalarField ph = ScalarField::coordinate(Axis::phi);
  const ScalarField th = ScalarField::coordinate(Axis::theta);
  const ScalarField ps = ScalarField::coordinate(Axis::psi);
  const ScalarField ch = cos(0.5 * nu_ * th), sh = sin(0.5 * nu_ * th);
  const ScalarField a = 0.5 * nu_ * (ph + ps);
  const ScalarField b = 0.5 * nu_ * (ph - ps);
  return {R * ch * cos(a), R * ch * sin(a), R * sh * cos(b), R * sh * sin(b)};
}

ScalarField frame_derivative(const ScalarField& f, int k, const FrameSpec& spec) {
  if (k < 0 || k > 2) throw AlgebraError("frame index out of range");
  DiffMemo memo;
  ScalarField out = ScalarField::constant(0.0);
  for (int j = 0; j < 3; ++j)
    out = out + spec.frame_field(j, k) * diff(f.ptr(), static_cast<Axis>(j), memo);
  return out;
}

double haar_total(double nu) { return 1.0 / (nu * nu * nu); }

double volume_total(double nu) { return 16.0 * kPi * kPi / (nu * nu * nu); }

}  // namespace triad
