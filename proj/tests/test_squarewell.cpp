#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "tfps/errors.hpp"
#include "tfps/squarewell.hpp"

using namespace tfps;
using namespace tfps::squarewell;

TEST_SUITE_BEGIN("squarewell");

TEST_CASE("mixed_internal_energy") {
  CHECK(mixed_internal_energy({1.0, 1.5, 1.0, 1.0, 0, 0}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(mixed_internal_energy({2.0, 0.0, 1.0, 2.0, 0, 0}) ==
        doctest::Approx((1.0 + 4.0) / 4.0).epsilon(1e-15));
  CHECK(mixed_internal_energy({1.0, 0.7, 3.0, 0.0, 0, 0}) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("separated_internal_optimum") {
  auto opt = separated_internal_optimum({3.0, 2.0, 2.0, 1.0, 0, 0}, 0.0);
  CHECK(opt.s1_length == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(opt.wall_left == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(opt.wall_right == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(opt.energy == doctest::Approx(1.5).epsilon(1e-15));

  auto sym = separated_internal_optimum({1.0, 2.0, 1.5, 1.5, 0, 0});
  CHECK(sym.s1_length == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sym.energy == doctest::Approx(2.0 * 1.5 * 1.5).epsilon(1e-15));

  auto single = separated_internal_optimum({2.0, 2.0, 1.0, 0.0, 0, 0});
  CHECK(single.s1_length == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(single.energy == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("threshold_verdict") {
  CHECK(threshold_verdict({1.0, 1.5, 1.0, 1.0, 0, 0}) == ThresholdVerdict::SeparatedFavored);
  CHECK(threshold_verdict({1.0, 0.5, 1.0, 1.0, 0, 0}) == ThresholdVerdict::MixedFavored);
  CHECK(threshold_verdict({1.0, 1.0, 1.0, 1.0, 0, 0}) == ThresholdVerdict::Degenerate);
  // at alpha=1 the two closed forms coincide exactly
  WellProblem w{1.0, 1.0, 1.0, 1.0, 0, 0};
  CHECK(mixed_internal_energy(w) == separated_internal_optimum(w).energy);
}

TEST_CASE("threshold_verdict agrees with sign(alpha-1) on random problems") {
  auto g = test::rng(17);
  for (int i = 0; i < 100; ++i) {
    WellProblem w;
    w.length = test::uniform(g, 0.2, 5.0);
    w.n1 = test::uniform(g, 0.1, 4.0);
    w.n2 = test::uniform(g, 0.1, 4.0);
    w.alpha = test::uniform(g, 0.05, 3.0);
    auto v = threshold_verdict(w);
    double um = mixed_internal_energy(w);
    double us = separated_internal_optimum(w).energy;
    if (w.alpha < 1.0) {
      CHECK(v == ThresholdVerdict::MixedFavored);
      CHECK(um < us);
    } else if (w.alpha > 1.0) {
      CHECK(v == ThresholdVerdict::SeparatedFavored);
      CHECK(um > us);
    }
  }
}

TEST_CASE("alpha_bounds") {
  auto [l1, u1] = alpha_bounds(1.0, 2.0);
  CHECK(l1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u1 == doctest::Approx(2.0).epsilon(1e-15));
  auto [l2, u2] = alpha_bounds(1.0, 1.0);
  CHECK(l2 == 1.0);
  CHECK(u2 == 1.0);
  auto [l3, u3] = alpha_bounds(3.0, 1.0);
  CHECK(l3 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(u3 == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("mixed_grand_energy") {
  CHECK(mixed_grand_energy({1.0, 3.0, 0, 0, 1.0, 2.0}) ==
        doctest::Approx(-0.4375).epsilon(1e-15));
  CHECK(mixed_grand_energy({1.0, 3.0, 0, 0, 1.0, 1.0}) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(mixed_grand_energy({1.0, 0.0, 0, 0, 1.0, 2.0}) == doctest::Approx(-2.5).epsilon(1e-15));

  CHECK_THROWS_AS(mixed_grand_energy({1.0, 1.2, 0, 0, 1.0, 2.0}), NonphysicalError);
  CHECK_THROWS_AS(mixed_grand_energy({1.0, 1.0, 0, 0, 1.0, 2.0}), DegenerateError);
}

TEST_CASE("mixed_grand_energy at the forbidden-interval edges equals the single-condensate minimum") {
  auto g = test::rng(23);
  for (int i = 0; i < 30; ++i) {
    double mu1 = test::uniform(g, 0.2, 3.0);
    double mu2 = test::uniform(g, 0.2, 3.0);
    if (mu1 == mu2) continue;
    double len = test::uniform(g, 0.5, 2.0);
    auto [lo, hi] = alpha_bounds(mu1, mu2);
    WellProblem w{len, lo, 0, 0, mu1, mu2};
    CHECK(test::rel_close(mixed_grand_energy(w), separated_grand_energy_min(w), 1e-12));
    w.alpha = hi;
    // at the upper edge the mixed state is the *smaller*-mu single condensate
    double e_small = -0.5 * len * std::min(mu1 * mu1, mu2 * mu2);
    CHECK(test::rel_close(mixed_grand_energy(w), e_small, 1e-12));
  }
}

TEST_CASE("mixed_grand_energy vanishes like 1/alpha") {
  WellProblem w{1.0, 1e3, 0, 0, 1.0, 2.0};
  double e3 = mixed_grand_energy(w);
  w.alpha = 1e4;
  double e4 = mixed_grand_energy(w);
  CHECK(std::abs(e4) < std::abs(e3));
  CHECK(e3 / e4 == doctest::Approx(10.0).epsilon(5e-3));
}

TEST_CASE("separated_grand_energy and its minimum") {
  WellProblem w{1.0, 2.0, 0, 0, 1.0, 2.0};
  CHECK(separated_grand_energy(w, 0.0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(separated_grand_energy_min(w) == doctest::Approx(-2.0).epsilon(1e-15));

  WellProblem weq{1.0, 2.0, 0, 0, 1.0, 1.0};
  for (double s : {0.0, 0.25, 0.5, 1.0})
    CHECK(separated_grand_energy(weq, s) == doctest::Approx(-0.5).epsilon(1e-15));

  CHECK(separated_grand_energy(w, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("equal chemical potentials: mixed beats separated exactly below alpha=1") {
  for (double alpha : {0.2, 0.8, 0.999, 1.0, 1.001, 2.0}) {
    WellProblem w{1.0, alpha, 0, 0, 1.0, 1.0};
    double em = mixed_grand_energy(w);
    double es = -0.5;
    if (alpha < 1.0) CHECK(em < es);
    if (alpha > 1.0) CHECK(em > es);
    if (alpha == 1.0) CHECK(em == doctest::Approx(es).epsilon(1e-15));
  }
}

TEST_SUITE_END();
