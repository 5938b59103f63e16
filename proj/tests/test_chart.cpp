#include <cmath>
#include <numbers>

#include "doctest.h"
#include "triad/chart.hpp"
#include "triad/errors.hpp"
#include "triad/grid.hpp"

using namespace triad;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("embedding lands on the sphere of radius 2/nu") {
  for (double nu : {0.5, 1.0, 2.0}) {
    const FrameSpec s = FrameSpec::su2(nu);
    const double R2 = (2.0 / nu) * (2.0 / nu);
    const VerificationGrid pts = VerificationGrid::halton(s, 1000);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto x = embed(pts.point(i), nu);
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
      worst = std::max(worst, std::fabs(r2 - R2));
    }
    CHECK(worst < 1e-10 * R2);
  }
}

TEST_CASE("embedding at the north pole limit") {
  const auto x = embed({0.0, 1e-9, 0.0}, 1.0);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::fabs(x[1]) < 1e-8);
  CHECK(std::fabs(x[2]) < 1e-8);
  CHECK(std::fabs(x[3]) < 1e-8);
}

TEST_CASE("embedding at (pi/2, pi/2, pi/2)") {
  const auto x = embed({kPi / 2, kPi / 2, kPi / 2}, 1.0);
  const double c4 = std::cos(kPi / 4);
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(2.0 * c4).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(2.0 * c4).epsilon(1e-14));
  CHECK(std::fabs(x[3]) < 1e-14);
}

TEST_CASE("coframe times frame is the identity") {
  for (double nu : {0.5, 1.0, 2.0}) {
    const FrameSpec s = FrameSpec::su2(nu);
    const VerificationGrid pts = VerificationGrid::halton(s, 1000);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto m = s.coframe_at(pts.point(i));
      const auto w = s.frame_at(pts.point(i));
      // coframe row r gives w^r in coordinate differentials; frame row j gives
      // coordinate differential j in the w basis. Contracting the coordinate
      // index must give the identity.
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          double acc = 0.0;
          for (int j = 0; j < 3; ++j) acc += m[r][j] * w[j][c];
          worst = std::max(worst, std::fabs(acc - (r == c ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("coframe determinant has magnitude sin(nu theta)") {
  // The chart is negatively oriented with respect to w1^w2^w3, so the
  // determinant itself is -sin(nu theta); the density is its magnitude.
  const FrameSpec s = FrameSpec::su2(1.0);
  const VerificationGrid pts = VerificationGrid::random(s, 200, 5);
  for (std::size_t i = 0; i < pts.size(); i += 7) {
    const ChartPoint p = pts.point(i);
    const auto m = s.coframe_at(p);
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(det == doctest::Approx(-std::sin(p.theta)).epsilon(1e-12));
    CHECK(std::fabs(std::fabs(det) - s.measure_weight(p)) < 1e-12);
  }
}

TEST_CASE("omega3 row is (cos nu theta, 0, 1) everywhere") {
  const FrameSpec s = FrameSpec::su2(2.0);
  const ChartPoint p{0.3, 0.9, 1.4};
  const auto m = s.coframe_at(p);
  CHECK(m[2][0] == doctest::Approx(std::cos(2.0 * 0.9)).epsilon(1e-14));
  CHECK(m[2][1] == 0.0);
  CHECK(m[2][2] == 1.0);
}

TEST_CASE("frame rows match the closed-form inverse") {
  const FrameSpec s = FrameSpec::su2(1.0);
  // at psi = 0, theta = pi/2: d phi = w2, d theta = w1, d psi = w3 (cot = 0)
  const ChartPoint p{0.7, kPi / 2, 0.0};
  const auto w = s.frame_at(p);
  CHECK(w[0][0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w[0][1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[1][0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[1][1] == doctest::Approx(0.0).epsilon(1e-14));
  // d psi always carries w3 with coefficient 1
  const VerificationGrid pts = VerificationGrid::random(s, 50, 11);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(s.frame_at(pts.point(i))[2][2] == 1.0);
}

TEST_CASE("chart functions reject points at the poles") {
  const FrameSpec s = FrameSpec::su2(1.0);
  CHECK_THROWS_AS(s.coframe_at({0.1, 1e-9, 0.2}), ChartError);
  CHECK_THROWS_AS(s.frame_at({0.1, kPi - 1e-9, 0.2}), ChartError);
  CHECK_NOTHROW(s.coframe_at({0.1, 0.5, 0.2}));
}

TEST_CASE("measure weight and analytic totals") {
  const FrameSpec s = FrameSpec::su2(2.0);
  CHECK(s.measure_weight({0.0, kPi / 4, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  for (double nu : {0.5, 1.0, 2.0}) {
    CHECK(haar_total(nu) == doctest::Approx(1.0 / (nu * nu * nu)).epsilon(1e-15));
    CHECK(volume_total(nu) ==
          doctest::Approx(2.0 * kPi * kPi * std::pow(2.0 / nu, 3)).epsilon(1e-15));
  }
}

TEST_CASE("nu must be positive") {
  CHECK_THROWS_AS(FrameSpec::su2(0.0), ConfigError);
  CHECK_THROWS_AS(FrameSpec::su2(-1.0), ConfigError);
}
