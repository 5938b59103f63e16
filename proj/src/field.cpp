#include "triad/field.hpp"

#include <cmath>
#include <cstring>
#include <utility>

namespace triad {

namespace {

constexpr double kDivGuard = 1e-14;   // |denominator| below this is an error
constexpr double kSqrtGuard = 1e-280; // derivative of sqrt degenerates at 0

ScalarField affine_field(const ScalarField& f, double c0, double c1);

// ---------------------------------------------------------------------------
// Expression nodes
// ---------------------------------------------------------------------------

class ConstExpr final : public FieldExpr {
 public:
  explicit ConstExpr(double c) : c_(c) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    const std::size_t n = ctx.points().padded;
    for (std::size_t i = 0; i < n; ++i) {
      out.v[i] = c_;
      out.dp[i] = out.dt[i] = out.dq[i] = 0.0;
    }
  }
  ScalarField derive(Axis, DiffMemo&) const override { return ScalarField::constant(0.0); }
  std::optional<double> constant_value() const override { return c_; }

 private:
  double c_;
};

class CoordExpr final : public FieldExpr {
 public:
  explicit CoordExpr(Axis a) : a_(a) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    const PointBlock& p = ctx.points();
    const double* src = a_ == Axis::phi ? p.phi : a_ == Axis::theta ? p.theta : p.psi;
    std::memcpy(out.v, src, p.padded * sizeof(double));
    for (std::size_t i = 0; i < p.padded; ++i) {
      out.dp[i] = a_ == Axis::phi ? 1.0 : 0.0;
      out.dt[i] = a_ == Axis::theta ? 1.0 : 0.0;
      out.dq[i] = a_ == Axis::psi ? 1.0 : 0.0;
    }
  }
  ScalarField derive(Axis axis, DiffMemo&) const override {
    return ScalarField::constant(axis == a_ ? 1.0 : 0.0);
  }

 private:
  Axis a_;
};

class AffineExpr final : public FieldExpr {
 public:
  AffineExpr(ExprPtr a, double c0, double c1) : a_(std::move(a)), c0_(c0), c1_(c1) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    ctx.kernels().affine(ctx.eval(*a_), c0_, c1_, out, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    return affine_field(diff(a_, axis, memo), 0.0, c1_);
  }
  const ExprPtr& child() const { return a_; }
  double c0() const { return c0_; }
  double c1() const { return c1_; }

 private:
  ExprPtr a_;
  double c0_, c1_;
};

class AddExpr final : public FieldExpr {
 public:
  AddExpr(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    ctx.kernels().add(ctx.eval(*a_), ctx.eval(*b_), out, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    return diff(a_, axis, memo) + diff(b_, axis, memo);
  }

 private:
  ExprPtr a_, b_;
};

class SubExpr final : public FieldExpr {
 public:
  SubExpr(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    ctx.kernels().sub(ctx.eval(*a_), ctx.eval(*b_), out, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    return diff(a_, axis, memo) - diff(b_, axis, memo);
  }

 private:
  ExprPtr a_, b_;
};

class MulExpr final : public FieldExpr {
 public:
  MulExpr(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    ctx.kernels().mul(ctx.eval(*a_), ctx.eval(*b_), out, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    const ScalarField fa(a_), fb(b_);
    return diff(a_, axis, memo) * fb + fa * diff(b_, axis, memo);
  }

 private:
  ExprPtr a_, b_;
};

class DivExpr final : public FieldExpr {
 public:
  DivExpr(ExprPtr a, ExprPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    const double min_den =
        ctx.kernels().div(ctx.eval(*a_), ctx.eval(*b_), out, ctx.points().padded);
    if (min_den < kDivGuard) throw EvalError("field division by near-zero denominator");
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    const ScalarField fa(a_), fb(b_);
    return (diff(a_, axis, memo) * fb - fa * diff(b_, axis, memo)) / (fb * fb);
  }

 private:
  ExprPtr a_, b_;
};

class SinExpr final : public FieldExpr {
 public:
  explicit SinExpr(ExprPtr a) : a_(std::move(a)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    simd::DualBlock& unused_cos = ctx.scratch();
    ctx.kernels().sincos(ctx.eval(*a_), out, unused_cos, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    return cos(ScalarField(a_)) * diff(a_, axis, memo);
  }

 private:
  ExprPtr a_;
};

class CosExpr final : public FieldExpr {
 public:
  explicit CosExpr(ExprPtr a) : a_(std::move(a)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    simd::DualBlock& unused_sin = ctx.scratch();
    ctx.kernels().sincos(ctx.eval(*a_), unused_sin, out, ctx.points().padded);
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    return affine_field(sin(ScalarField(a_)), 0.0, -1.0) * diff(a_, axis, memo);
  }

 private:
  ExprPtr a_;
};

class TanExpr final : public FieldExpr {
 public:
  explicit TanExpr(ExprPtr a) : a_(std::move(a)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    simd::DualBlock& s = ctx.scratch();
    simd::DualBlock& c = ctx.scratch();
    const std::size_t n = ctx.points().padded;
    ctx.kernels().sincos(ctx.eval(*a_), s, c, n);
    const double min_den = ctx.kernels().div(s, c, out, n);
    if (min_den < kDivGuard) throw EvalError("tan evaluated too close to a pole");
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    const ScalarField self(shared_from_this());
    return (1.0 + self * self) * diff(a_, axis, memo);
  }

 private:
  ExprPtr a_;
};

class SqrtExpr final : public FieldExpr {
 public:
  explicit SqrtExpr(ExprPtr a) : a_(std::move(a)) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    const double min_val = ctx.kernels().sqrt_(ctx.eval(*a_), out, ctx.points().padded);
    if (min_val < -1e-12) throw EvalError("sqrt of negative field value");
    if (min_val < kSqrtGuard) throw EvalError("sqrt derivative undefined at zero");
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    const ScalarField self(shared_from_this());
    return diff(a_, axis, memo) / (2.0 * self);
  }

 private:
  ExprPtr a_;
};

class PowExpr final : public FieldExpr {
 public:
  PowExpr(ExprPtr a, int k) : a_(std::move(a)), k_(k) {}
  void compute(simd::DualBlock& out, EvalContext& ctx) const override {
    const std::size_t n = ctx.points().padded;
    const simd::DualBlock& base = ctx.eval(*a_);
    const int m = k_ < 0 ? -k_ : k_;
    ctx.kernels().affine(base, 0.0, 1.0, out, n);
    for (int i = 1; i < m; ++i) ctx.kernels().mul(out, base, out, n);
    if (k_ < 0) {
      simd::DualBlock& one = ctx.scratch();
      for (std::size_t i = 0; i < n; ++i) {
        one.v[i] = 1.0;
        one.dp[i] = one.dt[i] = one.dq[i] = 0.0;
      }
      const double min_den = ctx.kernels().div(one, out, out, n);
      if (min_den < kDivGuard) throw EvalError("negative power of near-zero field value");
    }
  }
  ScalarField derive(Axis axis, DiffMemo& memo) const override {
    const ScalarField base(a_);
    return double(k_) * pow(base, k_ - 1) * diff(a_, axis, memo);
  }

 private:
  ExprPtr a_;
  int k_;
};

// ---------------------------------------------------------------------------
// Folding constructors
// ---------------------------------------------------------------------------

ScalarField affine_field(const ScalarField& f, double c0, double c1) {
  if (auto c = f.constant_value()) return ScalarField::constant(c0 + c1 * *c);
  if (c1 == 0.0) return ScalarField::constant(c0);
  if (c0 == 0.0 && c1 == 1.0) return f;
  if (auto* aff = dynamic_cast<const AffineExpr*>(f.ptr().get()))
    return affine_field(ScalarField(aff->child()), c0 + c1 * aff->c0(), c1 * aff->c1());
  return ScalarField(std::make_shared<AffineExpr>(f.ptr(), c0, c1));
}

}  // namespace

// ---------------------------------------------------------------------------

void PointBlock::assign(const double* ph, const double* th, const double* ps, std::size_t n) {
  if (n == 0 || n > simd::kBlock) throw Error("point block size out of range");
  std::memcpy(phi, ph, n * sizeof(double));
  std::memcpy(theta, th, n * sizeof(double));
  std::memcpy(psi, ps, n * sizeof(double));
  count = n;
  padded = (n + simd::kVectorWidth - 1) & ~(simd::kVectorWidth - 1);
  for (std::size_t i = n; i < padded; ++i) {
    phi[i] = ph[n - 1];
    theta[i] = th[n - 1];
    psi[i] = ps[n - 1];
  }
}

ScalarField::ScalarField() : expr_(std::make_shared<ConstExpr>(0.0)) {}

ScalarField ScalarField::constant(double c) {
  return ScalarField(std::make_shared<ConstExpr>(c));
}

ScalarField ScalarField::coordinate(Axis a) {
  static const ScalarField fields[3] = {
      ScalarField(std::make_shared<CoordExpr>(Axis::phi)),
      ScalarField(std::make_shared<CoordExpr>(Axis::theta)),
      ScalarField(std::make_shared<CoordExpr>(Axis::psi)),
  };
  return fields[static_cast<int>(a)];
}

Dual3 ScalarField::eval(const ChartPoint& p) const {
  thread_local EvalContext ctx;
  thread_local PointBlock blk;
  blk.assign(p);
  ctx.begin(blk);
  const simd::DualBlock& d = ctx.eval(*this);
  return {d.v[0], d.dp[0], d.dt[0], d.dq[0]};
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  const auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ScalarField::constant(*ca + *cb);
  if (ca) return affine_field(b, *ca, 1.0);
  if (cb) return affine_field(a, *cb, 1.0);
  return ScalarField(std::make_shared<AddExpr>(a.ptr(), b.ptr()));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  const auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ScalarField::constant(*ca - *cb);
  if (ca) return affine_field(b, *ca, -1.0);
  if (cb) return affine_field(a, -*cb, 1.0);
  if (a.ptr() == b.ptr()) return ScalarField::constant(0.0);
  return ScalarField(std::make_shared<SubExpr>(a.ptr(), b.ptr()));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  const auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb) return ScalarField::constant(*ca * *cb);
  if (ca) return affine_field(b, 0.0, *ca);
  if (cb) return affine_field(a, 0.0, *cb);
  return ScalarField(std::make_shared<MulExpr>(a.ptr(), b.ptr()));
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  const auto ca = a.constant_value(), cb = b.constant_value();
  if (cb) {
    if (std::fabs(*cb) < 1e-14) throw EvalError("field division by zero constant");
    if (ca) return ScalarField::constant(*ca / *cb);
    return affine_field(a, 0.0, 1.0 / *cb);
  }
  if (ca && *ca == 0.0) return ScalarField::constant(0.0);
  return ScalarField(std::make_shared<DivExpr>(a.ptr(), b.ptr()));
}

ScalarField operator-(const ScalarField& a) { return affine_field(a, 0.0, -1.0); }

ScalarField sin(const ScalarField& f) {
  if (auto c = f.constant_value()) return ScalarField::constant(std::sin(*c));
  return ScalarField(std::make_shared<SinExpr>(f.ptr()));
}

ScalarField cos(const ScalarField& f) {
  if (auto c = f.constant_value()) return ScalarField::constant(std::cos(*c));
  return ScalarField(std::make_shared<CosExpr>(f.ptr()));
}

ScalarField tan(const ScalarField& f) {
  if (auto c = f.constant_value()) return ScalarField::constant(std::tan(*c));
  return ScalarField(std::make_shared<TanExpr>(f.ptr()));
}

ScalarField sqrt(const ScalarField& f) {
  if (auto c = f.constant_value(); c && *c >= 0.0) return ScalarField::constant(std::sqrt(*c));
  return ScalarField(std::make_shared<SqrtExpr>(f.ptr()));
}

ScalarField pow(const ScalarField& f, int k) {
  if (k == 0) return ScalarField::constant(1.0);
  if (k == 1) return f;
  if (auto c = f.constant_value()) return ScalarField::constant(std::pow(*c, k));
  return ScalarField(std::make_shared<PowExpr>(f.ptr(), k));
}

ScalarField diff(const ExprPtr& e, Axis axis, DiffMemo& memo) {
  auto& map = memo.per_axis[static_cast<int>(axis)];
  if (auto it = map.find(e.get()); it != map.end()) return it->second;
  ScalarField d = e->derive(axis, memo);
  map.emplace(e.get(), d);
  return d;
}

ScalarField diff(const ScalarField& f, Axis axis) {
  DiffMemo memo;
  return diff(f.ptr(), axis, memo);
}

}  // namespace triad
