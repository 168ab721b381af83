#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "skewdim/skew_system.hpp"
#include "skewdim/util.hpp"

using namespace skewdim;

TEST_CASE("reference system validates cleanly") {
  ValidationReport report = validate_system(fixtures::ref_exact());
  CHECK(report.ok());
  CHECK(report.violations.empty());
  CHECK(report.warnings.empty());
}

TEST_CASE("validation flags lambda out of range") {
  SkewSystem bad = SkewSystem::create(fixtures::ref_base(),
                                      FiberProfile::exact(fixtures::ref_phi()), 0.6);
  ValidationReport report = validate_system(bad);
  CHECK_FALSE(report.ok());
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);
}

TEST_CASE("validation flags weak band separation") {
  // |gamma_1 - gamma_2| = 0.23 < lambda, so depth-1 bands overlap.
  SkewSystem bad = SkewSystem::create(fixtures::ref_base(),
                                      FiberProfile::lower_const(0.55, 0.78), 0.25);
  CHECK_FALSE(validate_system(bad).ok());
}

TEST_CASE("validation flags a phi range leaving the safe strip") {
  SkewSystem bad = SkewSystem::create(
      fixtures::ref_base(),
      FiberProfile::exact(MonotoneTable::create(
          {{0.0, 0.4}, {0.4, 0.55}, {0.6, 0.82}, {1.0, 0.875}})),
      0.25);
  CHECK_FALSE(validate_system(bad).ok());
}

TEST_CASE("the origin is a fixed point of the reference system") {
  Point fixed{0.0, 0.5};
  Point image = apply_F(fixtures::ref_exact(), fixed);
  CHECK(image.x == 0.0);
  CHECK(image.y == 0.5);
}

TEST_CASE("one application of F matches hand evaluation") {
  Point image = apply_F(fixtures::ref_exact(), Point{0.2, 0.5});
  CHECK(image.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(image.y == doctest::Approx(0.525).epsilon(1e-15));

  // y contracts toward the fiber value: phi(0.2) + lambda (0.9 - 0.5).
  Point high = apply_F(fixtures::ref_exact(), Point{0.2, 0.9});
  CHECK(high.y == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("constant-kind fiber value is undefined inside the gap") {
  SkewSystem lower = fixtures::ref_lower();
  CHECK_THROWS_AS((void)apply_F(lower, Point{0.5, 0.5}), gap_error);
  CHECK(apply_F(lower, Point{0.2, 0.5}).y == doctest::Approx(0.55).epsilon(1e-15));
}

TEST_CASE("closed form equals stepwise composition off the gap") {
  SkewSystem sys = fixtures::ref_exact();
  std::mt19937_64 eng(4242);
  int checked = 0;
  while (checked < 300) {
    Point start{u01(eng), u01(eng)};
    int p = 1 + static_cast<int>(eng() % 12);

    // Same branch decisions in both evaluations, so only starts whose
    // forward x-path avoids the gap are comparable.
    bool safe = true;
    double x = start.x;
    for (int k = 0; k < p && safe; ++k) {
      if (sys.base().in_gap(x)) safe = false;
      x = sys.base().apply_T(x);
    }
    if (!safe) continue;

    Point stepwise = start;
    for (int k = 0; k < p; ++k) stepwise = apply_F(sys, stepwise);
    Point closed = apply_Fp_closed_form(sys, start, p);
    CHECK(std::abs(stepwise.x - closed.x) < 1e-9);
    CHECK(std::abs(stepwise.y - closed.y) < 1e-9);
    ++checked;
  }
}

TEST_CASE("closed form refuses orbits meeting the gap") {
  CHECK_THROWS_AS((void)apply_Fp_closed_form(fixtures::ref_exact(), Point{0.5, 0.5}, 2),
                  gap_error);
}

TEST_CASE("fiber series reproduces the pinned two-step value") {
  Interval series = fiber_series(fixtures::ref_exact(), 0.5, Word::parse("12"));
  // Backward orbit 0.2, 0.68; phi values 0.525, 0.831;
  // y_lo = 0.525 + 0.25 * 0.831 - (0.25 + 0.0625) / 2.
  CHECK(series.lo == doctest::Approx(0.5765).epsilon(1e-15));
  CHECK(series.hi == doctest::Approx(0.639).epsilon(1e-15));
  CHECK(series.width() == lambda_power(0.25, 2));
}

TEST_CASE("fiber series of the empty word is the whole fiber") {
  Interval whole = fiber_series(fixtures::ref_exact(), 0.3, Word{});
  CHECK(whole.lo == 0.0);
  CHECK(whole.hi == 1.0);
}

TEST_CASE("fiber series width is exactly lambda^p") {
  SkewSystem sys = fixtures::ref_exact();
  std::mt19937_64 eng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    int p = 1 + static_cast<int>(eng() % 10);
    Word w = Word::from_index(eng() % (std::uint64_t{1} << p), p);
    Interval series = fiber_series(sys, u01(eng), w);
    CHECK(series.width() == lambda_power(0.25, p));
  }
}

TEST_CASE("bounding constants come from phi at the pinned abscissas") {
  SkewSystem upper = fixtures::ref_upper();
  CHECK(upper.fiber().constant(1) == 0.5);
  CHECK(upper.fiber().constant(2) == 0.875);
  CHECK(upper.fiber().kind() == FiberProfile::Kind::upper_const);

  SkewSystem lower = fixtures::ref_lower();
  CHECK(lower.fiber().constant(1) == 0.55);
  CHECK(lower.fiber().constant(2) == 0.82);
  CHECK(lower.fiber().kind() == FiberProfile::Kind::lower_const);

  CHECK_THROWS_AS((void)derive_upper(lower), std::invalid_argument);
}

TEST_CASE("per-symbol envelope brackets the exact series") {
  // For increasing phi the term for symbol 1 lies in [phi(a), phi(c)]
  // and the term for symbol 2 in [phi(d), phi(b)], so series built from
  // the per-symbol extremes bracket the exact one termwise.
  SkewSystem exact = fixtures::ref_exact();
  SkewSystem env_min = SkewSystem::create(fixtures::ref_base(),
                                          FiberProfile::lower_const(0.5, 0.82), 0.25);
  SkewSystem env_max = SkewSystem::create(fixtures::ref_base(),
                                          FiberProfile::lower_const(0.55, 0.875), 0.25);
  std::mt19937_64 eng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    int p = 1 + static_cast<int>(eng() % 8);
    Word w = Word::from_index(eng() % (std::uint64_t{1} << p), p);
    double x = u01(eng);
    double lo = fiber_series(env_min, x, w).lo;
    double mid = fiber_series(exact, x, w).lo;
    double hi = fiber_series(env_max, x, w).lo;
    CHECK(lo <= mid + 1e-12);
    CHECK(mid <= hi + 1e-12);
  }
}

TEST_CASE("fiber IFS requires constant fibers") {
  CHECK_THROWS_AS((void)fiber_ifs(fixtures::ref_exact()), std::invalid_argument);
}

TEST_CASE("dimension formula") {
  CHECK(theoretical_dimension(0.25) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(theoretical_dimension(0.3) == doctest::Approx(1.575716642493445).epsilon(1e-12));
  CHECK(theoretical_dimension(0.2) == doctest::Approx(1.4306765580733931).epsilon(1e-12));
}

TEST_CASE("lambda powers are plain repeated products") {
  CHECK(lambda_power(0.25, 3) == 0.015625);
  CHECK(lambda_power(0.3, 1) == 0.3);
  CHECK(lambda_power(0.3, 0) == 1.0);
}

TEST_CASE("other-ratio fixtures validate") {
  CHECK(validate_system(fixtures::sys_lambda(0.2)).ok());
  CHECK(validate_system(fixtures::sys_lambda(0.3)).ok());
}
