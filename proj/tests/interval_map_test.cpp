#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "skewdim/interval_map.hpp"
#include "skewdim/util.hpp"

using namespace skewdim;

TEST_CASE("reference base map evaluates both branches and the gap") {
  IntervalMap map = fixtures::ref_base();
  CHECK(map.apply_T(0.2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(map.apply_T(0.8) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(map.apply_T(0.4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(map.apply_T(0.6) == doctest::Approx(0.0).epsilon(1e-15));
  // The gap collapses to the left endpoint.
  CHECK(map.apply_T(0.5) == 0.0);
  CHECK(map.apply_T(0.45) == 0.0);
}

TEST_CASE("branch membership") {
  IntervalMap map = fixtures::ref_base();
  CHECK(map.branch_of(0.0) == 1);
  CHECK(map.branch_of(0.4) == 1);
  CHECK(map.branch_of(0.6) == 2);
  CHECK(map.branch_of(1.0) == 2);
  CHECK(map.branch_of(0.5) == 0);
  CHECK(map.in_gap(0.5));
  CHECK_FALSE(map.in_gap(0.4));
  CHECK_FALSE(map.in_gap(0.6));
}

TEST_CASE("branch inverses land in the right interval and invert apply_T") {
  IntervalMap map = fixtures::ref_base();
  CHECK(map.branch_inverse(1, 0.5) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(map.branch_inverse(2, 0.5) == doctest::Approx(0.8).epsilon(1e-15));

  std::mt19937_64 eng(12345);
  for (int trial = 0; trial < 1000; ++trial) {
    double y = u01(eng);
    for (int i : {1, 2}) {
      double x = map.branch_inverse(i, y);
      CHECK(x >= map.branch(i).lo() - 1e-12);
      CHECK(x <= map.branch(i).hi() + 1e-12);
      CHECK(map.apply_T(x) == doctest::Approx(y).epsilon(1e-12));
    }
  }
}

TEST_CASE("backward orbit follows the word") {
  IntervalMap map = fixtures::ref_base();
  std::vector<double> orbit = map.backward_orbit(0.5, Word::parse("12"));
  REQUIRE(orbit.size() == 2);
  CHECK(orbit[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(orbit[1] == doctest::Approx(0.68).epsilon(1e-15));

  // x_k always lies in the branch interval named by w_{k-1}.
  std::mt19937_64 eng(99);
  for (int trial = 0; trial < 200; ++trial) {
    double x = u01(eng);
    Word w = Word::from_index(eng() % 256, 8);
    std::vector<double> path = map.backward_orbit(x, w);
    REQUIRE(path.size() == 8);
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Branch& br = map.branch(w.at(k));
      CHECK(path[k] >= br.lo() - 1e-12);
      CHECK(path[k] <= br.hi() + 1e-12);
    }
  }
}

TEST_CASE("coupled-expanding verification") {
  CHECK(verify_coupled_expanding(fixtures::ref_base()).holds);
  CHECK(verify_coupled_expanding(fixtures::ref_base()).gap == doctest::Approx(0.2));

  // Branch 1 stops short of b, so its image cannot cover V2.
  IntervalMap short_map =
      IntervalMap::create(0.0, 1.0, 0.4, 0.6, Branch::linear(0.0, 0.4, 0.0, 0.9),
                          Branch::linear(0.6, 1.0, 0.0, 1.0));
  CoupledExpandingReport report = verify_coupled_expanding(short_map);
  CHECK_FALSE(report.holds);
  CHECK(report.witness.has_value());
}

TEST_CASE("entropy of a full-branch map is log 2") {
  CHECK(entropy_full_branch(fixtures::ref_base()) == std::log(2.0));
  IntervalMap short_map =
      IntervalMap::create(0.0, 1.0, 0.4, 0.6, Branch::linear(0.0, 0.4, 0.0, 0.9),
                          Branch::linear(0.6, 1.0, 0.0, 1.0));
  CHECK_THROWS_AS((void)entropy_full_branch(short_map), std::invalid_argument);
}

TEST_CASE("tabulated branch matches the linear branch it samples") {
  Branch linear = Branch::linear(0.0, 0.4, 0.0, 1.0);
  Branch tabulated = Branch::tabulated({{0.0, 0.0}, {0.1, 0.25}, {0.2, 0.5}, {0.3, 0.75}, {0.4, 1.0}});
  CHECK(tabulated.kind() == Branch::Kind::tabulated);
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 200; ++trial) {
    double x = uniform_in(eng, 0.0, 0.4);
    CHECK(tabulated.eval(x) == doctest::Approx(linear.eval(x)).epsilon(1e-12));
    double y = u01(eng);
    CHECK(tabulated.inverse(y) == doctest::Approx(linear.inverse(y)).epsilon(1e-10));
  }
}

TEST_CASE("construction rejects bad geometry") {
  CHECK_THROWS_AS(IntervalMap::create(0.0, 1.0, 0.6, 0.4, Branch::linear(0.0, 0.6, 0.0, 1.0),
                                      Branch::linear(0.4, 1.0, 0.0, 1.0)),
                  std::invalid_argument);
  // Branch interval must match [a, c].
  CHECK_THROWS_AS(IntervalMap::create(0.0, 1.0, 0.4, 0.6, Branch::linear(0.0, 0.3, 0.0, 1.0),
                                      Branch::linear(0.6, 1.0, 0.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("decreasing full branch still verifies") {
  IntervalMap map =
      IntervalMap::create(0.0, 1.0, 0.4, 0.6, Branch::linear(0.0, 0.4, 0.0, 1.0),
                          Branch::linear(0.6, 1.0, 1.0, 0.0));
  CHECK(verify_coupled_expanding(map).holds);
  CHECK(map.apply_T(0.6) == doctest::Approx(1.0));
  CHECK(map.apply_T(1.0) == doctest::Approx(0.0));
  CHECK(map.branch_inverse(2, 0.25) == doctest::Approx(0.9).epsilon(1e-12));
}
