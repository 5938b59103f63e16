#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "triad/dual.hpp"
#include "triad/errors.hpp"
#include "triad/simd/kernels.hpp"

namespace triad {

// A point (phi, theta, psi) of the Euler-arclength chart. Coordinates are
// arclength parameters: nu*phi in [0, 2pi), nu*theta in (0, pi), nu*psi in
// [0, 4pi). Validity against the theta margin is checked by FrameSpec.
struct ChartPoint {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

enum class Axis : int { phi = 0, theta = 1, psi = 2 };

// SoA block of chart points. The tail up to the next vector-width multiple is
// padded with copies of the last valid point so kernels can run full vectors.
struct PointBlock {
  alignas(32) double phi[simd::kBlock];
  alignas(32) double theta[simd::kBlock];
  alignas(32) double psi[simd::kBlock];
  std::size_t count = 0;
  std::size_t padded = 0;

  void assign(const double* ph, const double* th, const double* ps, std::size_t n);
  void assign(const ChartPoint& p) { assign(&p.phi, &p.theta, &p.psi, 1); }
  ChartPoint at(std::size_t i) const { return {phi[i], theta[i], psi[i]}; }
};

class ScalarField;
class EvalContext;
struct DiffMemo;

class FieldExpr : public std::enable_shared_from_this<FieldExpr> {
 public:
  virtual ~FieldExpr() = default;
  virtual void compute(simd::DualBlock& out, EvalContext& ctx) const = 0;
  virtual ScalarField derive(Axis axis, DiffMemo& memo) const = 0;
  virtual std::optional<double> constant_value() const { return std::nullopt; }
};

using ExprPtr = std::shared_ptr<const FieldExpr>;

// A chart function together with its exact first partial derivatives,
// evaluated by forward-mode dual arithmetic over point blocks. Fields are
// immutable values; arithmetic builds a shared expression graph.
class ScalarField {
 public:
  ScalarField();  // the zero field
  explicit ScalarField(ExprPtr e) : expr_(std::move(e)) {}

  static ScalarField constant(double c);
  static ScalarField coordinate(Axis a);

  const ExprPtr& ptr() const { return expr_; }
  const FieldExpr& expr() const { return *expr_; }
  std::optional<double> constant_value() const { return expr_->constant_value(); }

  Dual3 eval(const ChartPoint& p) const;

 private:
  ExprPtr expr_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);

inline ScalarField operator+(const ScalarField& a, double c) { return a + ScalarField::constant(c); }
inline ScalarField operator+(double c, const ScalarField& a) { return a + c; }
inline ScalarField operator-(const ScalarField& a, double c) { return a - ScalarField::constant(c); }
inline ScalarField operator-(double c, const ScalarField& a) { return ScalarField::constant(c) - a; }
inline ScalarField operator*(const ScalarField& a, double c) { return a * ScalarField::constant(c); }
inline ScalarField operator*(double c, const ScalarField& a) { return a * c; }
inline ScalarField operator/(const ScalarField& a, double c) { return a / ScalarField::constant(c); }
inline ScalarField operator/(double c, const ScalarField& a) { return ScalarField::constant(c) / a; }

ScalarField sin(const ScalarField& f);
ScalarField cos(const ScalarField& f);
ScalarField tan(const ScalarField& f);
ScalarField sqrt(const ScalarField& f);
ScalarField pow(const ScalarField& f, int k);

// Exact partial derivative as a field, built by structural forward
// differentiation of the expression graph. The result is an ordinary field,
// so derivatives of derivatives (d∘d checks, connection curvature) stay exact.
ScalarField diff(const ScalarField& f, Axis axis);

struct DiffMemo {
  std::unordered_map<const FieldExpr*, ScalarField> per_axis[3];
};
ScalarField diff(const ExprPtr& e, Axis axis, DiffMemo& memo);

// Per-block evaluation state: a buffer pool plus a node-level memo so shared
// subexpressions are evaluated once per block. Not reentrant.
class EvalContext {
 public:
  EvalContext() : ks_(&simd::active_kernels()) {}

  void begin(const PointBlock& block) {
    ks_ = &simd::active_kernels();
    pts_ = &block;
    used_ = 0;
    memo_.clear();
  }

  const PointBlock& points() const { return *pts_; }
  const simd::KernelSet& kernels() const { return *ks_; }

  simd::DualBlock& scratch() {
    if (used_ == pool_.size()) pool_.emplace_back(std::make_unique<simd::DualBlock>());
    return *pool_[used_++];
  }

  const simd::DualBlock& eval(const FieldExpr& e) {
    if (auto it = memo_.find(&e); it != memo_.end()) return *it->second;
    simd::DualBlock& out = scratch();
    e.compute(out, *this);
    memo_.emplace(&e, &out);
    return out;
  }
  const simd::DualBlock& eval(const ScalarField& f) { return eval(f.expr()); }

 private:
  const simd::KernelSet* ks_;
  const PointBlock* pts_ = nullptr;
  std::vector<std::unique_ptr<simd::DualBlock>> pool_;
  std::size_t used_ = 0;
  std::unordered_map<const FieldExpr*, const simd::DualBlock*> memo_;
};

}  // namespace triad
