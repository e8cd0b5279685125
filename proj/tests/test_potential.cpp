#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "tfps/errors.hpp"
#include "tfps/potential.hpp"

using namespace tfps;

TEST_SUITE_BEGIN("potential");

TEST_CASE("evaluate: closed forms") {
  auto harm = Potential::harmonic(1.0, 0.0);
  CHECK(harm(0.5) == doctest::Approx(0.25).epsilon(1e-15));

  auto dw = Potential::double_well(1.0, 1.0);
  CHECK(dw(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dw(1.0) == doctest::Approx(0.0).epsilon(1e-15));

  auto sw = Potential::square_well(0.0, 1.0);
  CHECK(sw(0.5) == 0.0);
  CHECK(std::isinf(sw(-0.1)));
  CHECK(std::isinf(sw(1.1)));
}

TEST_CASE("derivative: closed forms") {
  CHECK(Potential::harmonic(1.0, 0.0).derivative(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Potential::double_well(1.0, 1.0).derivative(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  // V = x^4 - 2x^2, V' = 4x^3 - 4x, V'(2) = 24
  auto poly = Potential::polynomial({0, 0, -2, 0, 1});
  CHECK(poly.derivative(2.0) == doctest::Approx(24.0).epsilon(1e-15));
}

TEST_CASE("derivative: breakpoint ambiguity") {
  // V-shaped piecewise potential: kink at 0
  auto pp = Potential::piecewise_polynomial({-1.0, 0.0, 1.0}, {{1.0, -1.0}, {0.0, 1.0}});
  CHECK(pp(-0.5) == doctest::Approx(0.5));
  CHECK(pp(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pp.derivative(0.0), PreconditionError);
  CHECK(pp.derivative(0.0, Side::Left) == doctest::Approx(-1.0));
  CHECK(pp.derivative(0.0, Side::Right) == doctest::Approx(1.0));
}

TEST_CASE("level_set: double well and harmonic") {
  auto dw = Potential::double_well(1.0, 1.0);
  // (x^2-1)^2 = 1/4  =>  x^2 in {1/2, 3/2}
  auto roots = dw.level_set(0.25, {-2.0, 2.0});
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].x == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-10));
  CHECK(roots[1].x == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-10));
  CHECK(roots[2].x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(roots[3].x == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  for (const auto& r : roots) CHECK_FALSE(r.tangential);

  auto harm = Potential::harmonic(1.0, 0.0);
  auto hr = harm.level_set(1.0, {-2.0, 2.0});
  REQUIRE(hr.size() == 2);
  CHECK(hr[0].x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(hr[1].x == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(harm.level_set(-1.0, {-2.0, 2.0}).empty());
}

TEST_CASE("level_set: tangential contacts flagged") {
  auto dw = Potential::double_well(1.0, 1.0);
  // barrier top at x=0 touches v=1 tangentially; transversal roots at +-sqrt(2)
  auto roots = dw.level_set(1.0, {-2.0, 2.0});
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].x == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-10));
  CHECK_FALSE(roots[0].tangential);
  CHECK(roots[1].x == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(roots[1].tangential);
  CHECK(roots[2].x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  // well bottoms touch v=0
  auto zero_roots = dw.level_set(0.0, {-2.0, 2.0});
  REQUIRE(zero_roots.size() == 2);
  CHECK(zero_roots[0].tangential);
  CHECK(zero_roots[1].tangential);
  CHECK(zero_roots[0].x == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("sublevel_set: double well") {
  auto dw = Potential::double_well(1.0, 1.0);
  auto s = dw.sublevel_set(0.25, {-2.0, 2.0});
  REQUIRE(s.parts().size() == 2);
  CHECK(s.parts()[0].lo == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-10));
  CHECK(s.parts()[0].hi == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-10));
  CHECK(s.parts()[1].lo == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(s.parts()[1].hi == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));

  auto s2 = dw.sublevel_set(2.0, {-3.0, 3.0});
  REQUIRE(s2.parts().size() == 1);
  double edge = std::sqrt(1.0 + std::sqrt(2.0));
  CHECK(s2.parts()[0].lo == doctest::Approx(-edge).epsilon(1e-10));
  CHECK(s2.parts()[0].hi == doctest::Approx(edge).epsilon(1e-10));

  auto sw = Potential::square_well(0.0, 1.0);
  auto s3 = sw.sublevel_set(5.0, {-2.0, 2.0});
  REQUIRE(s3.parts().size() == 1);
  CHECK(s3.parts()[0].lo == 0.0);
  CHECK(s3.parts()[0].hi == 1.0);
}

TEST_CASE("sublevel_set: tangential touch is an isolated point") {
  auto dw = Potential::double_well(1.0, 1.0);
  auto s = dw.sublevel_set(0.0, {-2.0, 2.0});
  REQUIRE(s.parts().size() == 2);
  CHECK(s.parts()[0].length() == doctest::Approx(0.0));
  CHECK(s.parts()[0].lo == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(s.parts()[1].lo == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("level_set points satisfy the residual bound and lie on the sublevel boundary") {
  auto g = test::rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto poly = test::random_confining_polynomial(g);
    Interval window = poly.domain_hint();
    double v = test::uniform(g, 0.0, 3.0);
    auto roots = poly.level_set(v, window);
    auto sub = poly.sublevel_set(v, window);
    for (const auto& r : roots) {
      CHECK(std::abs(poly(r.x) - v) <=
            1e-12 * std::max(1.0, std::abs(v)) + 1e-9 * std::abs(poly.derivative(r.x)));
      if (!r.tangential) {
        // transversal roots sit on the boundary of the sublevel set
        bool on_boundary = false;
        for (const auto& p : sub.parts())
          if (std::abs(p.lo - r.x) < 1e-9 || std::abs(p.hi - r.x) < 1e-9) on_boundary = true;
        CHECK(on_boundary);
      }
    }
  }
}

TEST_CASE("derivative matches finite differences: 100 points per family") {
  auto g = test::rng(11);
  std::vector<Potential> family = {
      Potential::harmonic(1.3, 0.2),
      Potential::double_well(0.8, 1.4),
      Potential::polynomial({0.1, -0.3, -1.0, 0.0, 0.5}),
      Potential::piecewise_polynomial({-2.0, 0.0, 2.0}, {{4.0, -4.0, 1.0}, {0.0, 0.0, 1.0}}),
  };
  for (const auto& p : family) {
    Interval w = p.domain_hint();
    for (int i = 0; i < 100; ++i) {
      double x = test::uniform(g, w.lo + 0.05 * w.length(), w.hi - 0.05 * w.length());
      // avoid the piecewise kink where only one-sided slopes exist
      if (p.family_name() == "piecewise_polynomial" && std::abs(x) < 1e-3) continue;
      double fd = test::fd_derivative([&](double t) { return p(t); }, x);
      CHECK(test::rel_close(p.derivative(x), fd, 1e-6));
    }
  }
}

TEST_CASE("tabulated reproduces its generating polynomial") {
  // dense sampling (>= 10^4 points) of a smooth polynomial on the window
  auto gen = Potential::polynomial({0, 0, -2, 0, 1});
  Interval w{-2.0, 2.0};
  const int n = 10001;
  std::vector<double> xs(n), vs(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[i] = w.lo + w.length() * i / (n - 1);
    vs[i] = gen(xs[i]);
    scale = std::max(scale, std::abs(vs[i]));
  }
  auto tab = Potential::tabulated(xs, vs);
  auto g = test::rng(3);
  for (int i = 0; i < 2000; ++i) {
    double x = test::uniform(g, w.lo, w.hi);
    CHECK(std::abs(tab(x) - gen(x)) <= 1e-6 * std::max(1.0, scale));
  }
  // level sets work through the interpolant: x^4 - 2x^2 = -1/4 has 4 roots
  auto roots = tab.level_set(-0.25, {-2.0, 2.0});
  CHECK(roots.size() == 4);
}

TEST_CASE("scaled potentials") {
  auto dw = Potential::double_well(1.0, 1.0).scaled(0.8);
  CHECK(dw(0.0) == doctest::Approx(0.8));
  auto sw = Potential::square_well(0.0, 2.0).scaled(3.0);
  CHECK(sw(1.0) == 0.0);
  CHECK(std::isinf(sw(3.0)));
}

TEST_CASE("phi: level sets, flatness, monotone bound") {
  auto v1 = Potential::double_well(1.0, 1.0);
  auto v2 = v1.scaled(0.8);
  PhiFunction phi{&v1, &v2};
  // phi = 0.2 V: phi = 0.05 at V = 0.25
  auto roots = phi.level_set(0.05, {-2.0, 2.0});
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].x == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-9));
  CHECK(phi.monotone_piece_bound({-2.0, 2.0}) == 4);

  auto h1 = Potential::harmonic(1.0, 0.0);
  auto h2 = Potential::harmonic(0.5, 0.0);
  PhiFunction phih{&h1, &h2};
  CHECK(phih.monotone_piece_bound({-2.0, 2.0}) == 2);

  PhiFunction phiflat{&v1, &v1};
  double val = 1;
  CHECK(phiflat.is_flat({-2.0, 2.0}, &val));
  CHECK(val == doctest::Approx(0.0));
}

TEST_SUITE_END();
