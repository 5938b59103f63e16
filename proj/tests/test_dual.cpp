#include <cmath>

#include "doctest.h"
#include "triad/dual.hpp"

using triad::Dual3;

TEST_CASE("dual constants have zero derivative") {
  const Dual3 c = Dual3::constant(3.5);
  CHECK(c.v == 3.5);
  CHECK(c.dp == 0.0);
  CHECK(c.dt == 0.0);
  CHECK(c.dq == 0.0);
}

TEST_CASE("dual product obeys the Leibniz rule exactly") {
  const Dual3 f{1.25, 0.5, -2.0, 3.0};
  const Dual3 g{-0.75, 4.0, 0.25, -1.5};
  const Dual3 fg = f * g;
  CHECK(fg.v == f.v * g.v);
  CHECK(fg.dp == f.v * g.dp + g.v * f.dp);
  CHECK(fg.dt == f.v * g.dt + g.v * f.dt);
  CHECK(fg.dq == f.v * g.dq + g.v * f.dq);
}

TEST_CASE("dual quotient inverts the product") {
  const Dual3 f{1.25, 0.5, -2.0, 3.0};
  const Dual3 g{-0.75, 4.0, 0.25, -1.5};
  const Dual3 h = (f * g) / g;
  CHECK(h.v == doctest::Approx(f.v).epsilon(1e-15));
  CHECK(h.dp == doctest::Approx(f.dp).epsilon(1e-13));
  CHECK(h.dt == doctest::Approx(f.dt).epsilon(1e-13));
  CHECK(h.dq == doctest::Approx(f.dq).epsilon(1e-13));
}

TEST_CASE("dual trig matches the chain rule") {
  const Dual3 x{0.7, 1.0, 2.0, -0.5};
  const Dual3 s = sin(x), c = cos(x);
  CHECK(s.v == std::sin(0.7));
  CHECK(s.dt == std::cos(0.7) * 2.0);
  CHECK(c.dq == -std::sin(0.7) * -0.5);
  const Dual3 unit = s * s + c * c;
  CHECK(unit.v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(unit.dp) < 1e-15);
}

TEST_CASE("dual sqrt differentiates as 1/(2 sqrt)") {
  const Dual3 x{4.0, 1.0, 0.0, 2.0};
  const Dual3 r = sqrt(x);
  CHECK(r.v == 2.0);
  CHECK(r.dp == 0.25);
  CHECK(r.dq == 0.5);
}
