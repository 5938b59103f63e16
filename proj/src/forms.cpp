#include "triad/forms.hpp"

#include <algorithm>

#include "triad/errors.hpp"

namespace triad {

namespace {

int coeff_count_for(int degree) {
  switch (degree) {
    case 0:
    case 3:
      return 1;
    case 1:
    case 2:
      return 3;
    default:
      throw AlgebraError("form degree must be 0..3");
  }
}

// wedge of two degree-1 coefficient vectors is the cross product in the
// cyclic degree-2 basis
std::array<ScalarField, 3> cross(const Form& a, const Form& b) {
  std::array<ScalarField, 3> m;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    m[i] = a.coeff(j) * b.coeff(k) - a.coeff(k) * b.coeff(j);
  }
  return m;
}

ScalarField dot(const Form& a, const Form& b) {
  return a.coeff(0) * b.coeff(0) + a.coeff(1) * b.coeff(1) + a.coeff(2) * b.coeff(2);
}

Form from_coeffs(int degree, std::array<ScalarField, 3> c) {
  if (degree == 1) return Form::one_form(c[0], c[1], c[2]);
  return Form::two_form(c[0], c[1], c[2]);
}

}  // namespace

Form Form::zero(int degree) {
  return Form(degree, std::vector<ScalarField>(coeff_count_for(degree)));
}

Form Form::scalar(ScalarField f) { return Form(0, {std::move(f)}); }

Form Form::one_form(ScalarField a1, ScalarField a2, ScalarField a3) {
  return Form(1, {std::move(a1), std::move(a2), std::move(a3)});
}

Form Form::two_form(ScalarField m23, ScalarField m31, ScalarField m12) {
  return Form(2, {std::move(m23), std::move(m31), std::move(m12)});
}

Form Form::top_form(ScalarField f) { return Form(3, {std::move(f)}); }

Form operator+(const Form& a, const Form& b) {
  if (a.degree() != b.degree()) throw AlgebraError("cannot add forms of different degree");
  switch (a.degree()) {
    case 0: return Form::scalar(a.coeff(0) + b.coeff(0));
    case 3: return Form::top_form(a.coeff(0) + b.coeff(0));
    default:
      return from_coeffs(a.degree(), {a.coeff(0) + b.coeff(0), a.coeff(1) + b.coeff(1),
                                      a.coeff(2) + b.coeff(2)});
  }
}

Form operator-(const Form& a, const Form& b) { return a + (-1.0 * b); }

Form operator-(const Form& a) { return -1.0 * a; }

Form operator*(const ScalarField& f, const Form& a) {
  switch (a.degree()) {
    case 0: return Form::scalar(f * a.coeff(0));
    case 3: return Form::top_form(f * a.coeff(0));
    default:
      return from_coeffs(a.degree(), {f * a.coeff(0), f * a.coeff(1), f * a.coeff(2)});
  }
}

Form operator*(double c, const Form& a) { return ScalarField::constant(c) * a; }

Form basis_one_form(int k) {
  if (k < 0 || k > 2) throw AlgebraError("coframe index out of range");
  ScalarField c[3] = {ScalarField::constant(0.0), ScalarField::constant(0.0),
                      ScalarField::constant(0.0)};
  c[k] = ScalarField::constant(1.0);
  return Form::one_form(c[0], c[1], c[2]);
}

Form volume_form() { return Form::top_form(ScalarField::constant(1.0)); }

Form wedge(const Form& a, const Form& b) {
  const int da = a.degree(), db = b.degree();
  if (da + db > 3) throw AlgebraError("wedge degree overflow (sum of degrees exceeds 3)");
  if (da == 0) return a.coeff(0) * b;
  if (db == 0) return b.coeff(0) * a;
  if (da == 1 && db == 1) {
    auto m = cross(a, b);
    return Form::two_form(m[0], m[1], m[2]);
  }
  // (1,2) and (2,1): the cyclic pairing contracts to the top coefficient with
  // a plus sign either way (degree-1 and degree-2 forms commute).
  return Form::top_form(dot(a, b));
}

Form exterior_d(const Form& a, const FrameSpec& spec) {
  switch (a.degree()) {
    case 0: {
      return Form::one_form(frame_derivative(a.coeff(0), 0, spec),
                            frame_derivative(a.coeff(0), 1, spec),
                            frame_derivative(a.coeff(0), 2, spec));
    }
    case 1: {
      // slot m of the result: e_{m+1}(f_{m+2}) - e_{m+2}(f_{m+1})
      //                       - sum_k C^k_{m+1,m+2} f_k
      std::array<ScalarField, 3> out;
      for (int m = 0; m < 3; ++m) {
        const int i = (m + 1) % 3, j = (m + 2) % 3;
        ScalarField s =
            frame_derivative(a.coeff(j), i, spec) - frame_derivative(a.coeff(i), j, spec);
        for (int k = 0; k < 3; ++k) {
          const double c = spec.structure_constant(k, i, j);
          if (c != 0.0) s = s - c * a.coeff(k);
        }
        out[m] = s;
      }
      return Form::two_form(out[0], out[1], out[2]);
    }
    case 2: {
      // d(m_i w^{i+1}^w^{i+2}) = e_i(m_i) vol + m_i d(basis element), where
      // d(w^{i+1}^w^{i+2}) = -(C^{i+1}_{i,i+1} + C^{i+2}_{i,i+2}) vol.
      ScalarField s = ScalarField::constant(0.0);
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        s = s + frame_derivative(a.coeff(i), i, spec);
        const double c = spec.structure_constant(j, i, j) + spec.structure_constant(k, i, k);
        if (c != 0.0) s = s - c * a.coeff(i);
      }
      return Form::top_form(s);
    }
    default:
      throw AlgebraError("exterior derivative is defined for degrees 0..2");
  }
}

Form hodge_star(const Form& a, const FrameSpec& spec) {
  const double o = spec.orientation();
  switch (a.degree()) {
    case 0: return Form::top_form(o * a.coeff(0));
    case 1: return Form::two_form(o * a.coeff(0), o * a.coeff(1), o * a.coeff(2));
    case 2: return Form::one_form(o * a.coeff(0), o * a.coeff(1), o * a.coeff(2));
    default: return Form::scalar(o * a.coeff(0));
  }
}

Form interior_product(const Form& v, const Form& a) {
  if (v.degree() != 1) throw AlgebraError("contraction vector must be given as a one-form");
  switch (a.degree()) {
    case 1: return Form::scalar(dot(v, a));
    case 2: {
      // iota_v of a cyclic 2-form m has degree-1 components m x v
      std::array<ScalarField, 3> out;
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        out[i] = a.coeff(j) * v.coeff(k) - a.coeff(k) * v.coeff(j);
      }
      return Form::one_form(out[0], out[1], out[2]);
    }
    case 3:
      return Form::two_form(v.coeff(0) * a.coeff(0), v.coeff(1) * a.coeff(0),
                            v.coeff(2) * a.coeff(0));
    default:
      throw AlgebraError("interior product needs a form of degree >= 1");
  }
}

ScalarField pullback_top(const Form& a, const FrameSpec& spec) {
  if (a.degree() != 3) throw AlgebraError("pullback_top needs a degree-3 form");
  return a.coeff(0) * spec.jacobian_field();
}

ScalarField form_norm(const Form& a) {
  if (a.degree() != 1 && a.degree() != 2)
    throw AlgebraError("form_norm is defined for degrees 1 and 2");
  return sqrt(a.coeff(0) * a.coeff(0) + a.coeff(1) * a.coeff(1) + a.coeff(2) * a.coeff(2));
}

double max_abs_value(const Form& a, const VerificationGrid& grid) {
  double m = 0.0;
  for (int i = 0; i < a.coeff_count(); ++i) m = std::max(m, max_abs_value(a.coeff(i), grid));
  return m;
}

}  // namespace triad
