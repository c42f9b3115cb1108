#include <doctest.h>

#include <stdexcept>
#include <random>

#include "geometry.hpp"

using namespace oco;

namespace {

Vec random_vec(std::mt19937_64& rng, std::size_t dim, double spread) {
  std::normal_distribution<double> n(0.0, spread);
  Vec v(dim);
  for (double& x : v) x = n(rng);
  return v;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("vector ops") {
  CHECK(norm_sq({3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(inner({1.0, 2.0}, {3.0, -1.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(inner({1.0}, {1.0, 2.0}), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Vec w = random_vec(rng, 5, 2.0);
    CHECK(inner(w, w) == doctest::Approx(norm_sq(w)));
  }
}

TEST_CASE("ball projection") {
  FeasibleSet unit = FeasibleSet::ball(Vec(2, 0.0), 1.0);
  Vec p = unit.project({3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));

  Vec q = unit.project({0.1, 0.2});
  CHECK(q[0] == 0.1);  // interior points come back unchanged
  CHECK(q[1] == 0.2);

  CHECK_THROWS_AS(unit.project({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("box projection") {
  FeasibleSet box = FeasibleSet::box({0.0, 0.0}, {1.0, 1.0});
  Vec p = box.project({-1.0, 0.5});
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.5);
}

TEST_CASE("diameter") {
  CHECK(FeasibleSet::ball(Vec(2, 0.0), 1.0).diameter() == doctest::Approx(2.0));
  CHECK(FeasibleSet::box({0.0, 0.0}, {1.0, 1.0}).diameter() == doctest::Approx(std::sqrt(2.0)));
  // translation invariance
  CHECK(FeasibleSet::ball({5.0, -3.0, 1.0}, 0.7).diameter() == doctest::Approx(1.4));
}

TEST_CASE("invalid sets rejected") {
  CHECK_THROWS_AS(FeasibleSet::ball(Vec(2, 0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::ball(Vec(2, 0.0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::box({1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::box({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);  // zero diameter
}

TEST_CASE("projection is idempotent, non-expansive, optimal") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.1, 3.0);

  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = 1 + static_cast<std::size_t>(rng() % 6);
    FeasibleSet set = (trial % 2 == 0)
                          ? FeasibleSet::ball(random_vec(rng, dim, 1.0), unif(rng))
                          : [&] {
                              Vec lo = random_vec(rng, dim, 1.0);
                              Vec hi = lo;
                              for (double& x : hi) x += unif(rng);
                              return FeasibleSet::box(lo, hi);
                            }();

    Vec u = random_vec(rng, dim, 4.0);
    Vec v = random_vec(rng, dim, 4.0);
    Vec pu = set.project(u);
    Vec pv = set.project(v);

    // idempotence is exact: a projected point is a member
    CHECK(set.project(pu) == pu);
    CHECK(set.contains(pu));

    // non-expansiveness
    CHECK(norm(axpy(pu, -1.0, pv)) <= norm(axpy(u, -1.0, v)) + 1e-12);

    // optimality vs a random member
    Vec inside = set.project(random_vec(rng, dim, 0.5));
    CHECK(norm(axpy(pu, -1.0, u)) <= norm(axpy(inside, -1.0, u)) + 1e-12);
  }
}

}  // TEST_SUITE
