#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "environments.hpp"
#include "oracles.hpp"

using namespace oco;

namespace {

Vec random_in_ball(std::mt19937_64& rng, std::size_t dim, double radius) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(dim);
  for (double& x : v) x = n(rng);
  double s = norm(v);
  std::uniform_real_distribution<double> u(0.0, radius);
  return s > 0.0 ? scaled(v, u(rng) / s) : v;
}

std::vector<LabeledSample> toy_rows() {
  // targets straddle 0 so both partitions are populated
  return {
      {{1.0, 0.5, 1.0}, -2.0}, {{-0.5, 1.0, 1.0}, 3.0},  {{0.2, -1.0, 1.0}, -1.0},
      {{2.0, 0.0, 1.0}, 5.0},  {{-1.0, -1.0, 1.0}, 0.5}, {{0.0, 2.0, 1.0}, -4.0},
  };
}

}  // namespace

TEST_SUITE("environments") {

TEST_CASE("linear sign environment emits the scaled all-ones gradient") {
  LinearSignEnv env(16, 0.25, 3);
  auto s = env.next_round(Vec(16, 0.0));
  REQUIRE(s.has_value());
  CHECK(norm(s->grad) == doctest::Approx(1.0));  // 0.25 * sqrt(16)
  for (double c : s->grad) CHECK(std::abs(c) == doctest::Approx(0.25));

  // constant between observations
  double first = s->grad[0];
  for (int i = 0; i < 10; ++i) {
    auto again = env.next_round(Vec(16, 0.0));
    CHECK(again->grad[0] == first);
  }

  // loss is the inner product with the decision
  Vec w(16, 0.1);
  auto at_w = env.next_round(w);
  CHECK(at_w->loss == doctest::Approx(inner(at_w->grad, w)));

  // signs are resampled at observations, both signs occur
  bool saw_pos = false, saw_neg = false;
  for (int i = 0; i < 200; ++i) {
    env.on_observation();
    (env.current_sign() > 0 ? saw_pos : saw_neg) = true;
  }
  CHECK(saw_pos);
  CHECK(saw_neg);
}

TEST_CASE("component-tied signs follow the active component") {
  LinearSignEnv env(4, 0.25, 9, SignRule::component);
  env.set_active_partition(0);
  CHECK(env.current_sign() == 1.0);
  env.on_observation();  // no resampling under this rule
  CHECK(env.current_sign() == 1.0);
  env.set_active_partition(1);
  CHECK(env.current_sign() == -1.0);
  auto s = env.next_round(Vec(4, 0.0));
  CHECK(s->grad[0] == doctest::Approx(-0.25));
}

TEST_CASE("absolute loss and its subgradient") {
  LabeledSample s{{1.0, 2.0, 1.0}, 3.0};
  Vec w{0.0, 0.0, 1.0};
  // w.x = 1, so the residual is 1 - 3 = -2
  CHECK(eval_loss(LossKind::absolute, s, w) == doctest::Approx(2.0));
  Vec g = loss_subgradient(LossKind::absolute, s, w);
  CHECK(g == Vec{-1.0, -2.0, -1.0});

  // at the kink the subgradient is zero
  LabeledSample at_kink{{1.0, 0.0}, 0.0};
  CHECK(loss_subgradient(LossKind::absolute, at_kink, {0.0, 5.0}) == Vec{0.0, 0.0});
}

TEST_CASE("logistic loss and its gradient") {
  LabeledSample s{{2.0, -1.0}, 1.0};
  Vec w(2, 0.0);  // w.x = 0 -> h = 1/2
  CHECK(eval_loss(LossKind::logistic, s, w) == doctest::Approx(std::log(2.0)));
  Vec g = loss_subgradient(LossKind::logistic, s, w);
  CHECK(g[0] == doctest::Approx(-1.0));  // (h - y) x = -0.5 * (2,-1)
  CHECK(g[1] == doctest::Approx(0.5));

  // numerically safe at extreme margins
  LabeledSample far{{1.0}, 0.0};
  CHECK(std::isfinite(eval_loss(LossKind::logistic, far, {800.0})));
  CHECK(eval_loss(LossKind::logistic, far, {800.0}) == doctest::Approx(800.0));
}

TEST_CASE("subgradient inequality holds for every loss") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int rep = 0; rep < 100; ++rep) {
    LabeledSample s;
    s.x.resize(4);
    for (double& x : s.x) x = gauss(rng);
    s.y = rep % 2 == 0 ? gauss(rng) : static_cast<double>(rng() % 2);
    LossKind kind = rep % 2 == 0 ? LossKind::absolute : LossKind::logistic;

    for (int pair = 0; pair < 10; ++pair) {
      Vec w = random_in_ball(rng, 4, 2.0);
      Vec v = random_in_ball(rng, 4, 2.0);
      Vec g = loss_subgradient(kind, s, w);
      double lhs = eval_loss(kind, s, w) - eval_loss(kind, s, v);
      CHECK(lhs <= inner(g, axpy(w, -1.0, v)) + 1e-9);
    }
  }

  // the linear environment trivially satisfies the same inequality
  LinearSignEnv env(4, 0.5, 7);
  for (int pair = 0; pair < 100; ++pair) {
    Vec w = random_in_ball(rng, 4, 1.0);
    Vec v = random_in_ball(rng, 4, 1.0);
    auto sw = env.next_round(w);
    auto sv = env.next_round(v);
    CHECK(sw->loss - sv->loss <= inner(sw->grad, axpy(w, -1.0, v)) + 1e-9);
    env.on_observation();
  }
}

TEST_CASE("observation process frequencies") {
  // certain observation with a unit mass
  {
    ObservationProcess proc(MixturePrior({}, {{1.0, 1.0}}), Disclosure::known, 5);
    for (long t = 1; t <= 100; ++t) {
      ObservationEvent ev = proc.observe(t, Vec{1.0});
      CHECK(ev.observed);
      CHECK(ev.p_disclosed == 1.0);
    }
  }

  // p = 0.5 mass: frequency within 4 standard errors
  {
    ObservationProcess proc(MixturePrior({}, {{0.5, 1.0}}), Disclosure::known, 6);
    const int rounds = 100000;
    std::vector<double> hits;
    hits.reserve(rounds);
    for (long t = 1; t <= rounds; ++t) {
      hits.push_back(proc.observe(t, Vec{1.0}).observed ? 1.0 : 0.0);
    }
    auto m = oracles::welford(hits);
    CHECK(std::abs(m.mean - 0.5) <= 4.0 * m.se);
  }

  // gap distribution under a constant p is geometric: mean gap -> 1/p
  {
    const double p = 0.2;
    ObservationProcess proc(MixturePrior({}, {{p, 1.0}}), Disclosure::none, 7);
    std::vector<double> gaps;
    long last = 0;
    for (long t = 1; gaps.size() < 20000; ++t) {
      ObservationEvent ev = proc.observe(t, Vec{1.0});
      if (ev.observed) {
        gaps.push_back(static_cast<double>(t - last));
        last = t;
        CHECK(!ev.p_disclosed);  // disclosure none hides p
      }
    }
    auto m = oracles::welford(gaps);
    CHECK(std::abs(m.mean - 1.0 / p) <= 4.0 * m.se);
  }
}

TEST_CASE("process resamples p after each observation") {
  MixturePrior two({}, {{0.25, 0.5}, {0.75, 0.5}});
  ObservationProcess proc(two, Disclosure::known, 11);
  bool saw_low = false, saw_high = false;
  for (long t = 1; t <= 2000; ++t) {
    double before = proc.current_p();
    CHECK((before == 0.25 || before == 0.75));
    ObservationEvent ev = proc.observe(t, Vec{1.0});
    if (ev.observed) {
      CHECK(*ev.p_disclosed == before);  // the p that produced this observation
      (before == 0.25 ? saw_low : saw_high) = true;
    } else {
      CHECK(proc.current_p() == before);  // unchanged while waiting
    }
  }
  CHECK(saw_low);
  CHECK(saw_high);
}

TEST_CASE("noise calibration") {
  const double sigma = 1.7;
  const int draws = 100000;
  for (NoiseKind kind : {NoiseKind::gaussian, NoiseKind::rademacher}) {
    NoiseModel model(kind, sigma, 5, 21);
    std::vector<double> sq, coord0;
    sq.reserve(draws);
    coord0.reserve(draws);
    for (int i = 0; i < draws; ++i) {
      Vec g = model.draw();
      sq.push_back(norm_sq(g));
      coord0.push_back(g[0]);
    }
    auto msq = oracles::welford(sq);
    auto mc = oracles::welford(coord0);
    CHECK(std::abs(msq.mean - sigma * sigma) <= 4.0 * msq.se + 1e-12);
    CHECK(std::abs(mc.mean) <= 4.0 * mc.se + 1e-12);
  }
}

TEST_CASE("dataset arrival modes") {
  auto rows = toy_rows();

  // randomized: one pass over copies, then exhaustion
  DatasetEnv env(rows, LossKind::absolute, Arrival::randomized, 2, 0.0, 31);
  CHECK(env.stream_length() == 12);
  Vec w(3, 0.0);
  std::vector<long> served_count(rows.size(), 0);
  for (int t = 0; t < 12; ++t) {
    auto s = env.next_round(w);
    REQUIRE(s.has_value());
    ++served_count[env.last_served_row()];
  }
  for (long c : served_count) CHECK(c == 2);  // every row exactly twice
  CHECK(!env.next_round(w).has_value());     // exhausted: run ends

  // semi-adversarial: rows come from the active partition only, recycling
  DatasetEnv semi(rows, LossKind::absolute, Arrival::semi_adversarial, 1, 0.0, 32);
  for (std::size_t part : {0u, 1u, 0u}) {
    semi.set_active_partition(part);
    for (int t = 0; t < 7; ++t) {  // more than the partition size, forcing a recycle
      auto s = semi.next_round(w);
      REQUIRE(s.has_value());
      CHECK(semi.partition_of(semi.last_served_row()) == part);
    }
  }
}

TEST_CASE("serving order is a pure function of the seed") {
  auto rows = toy_rows();
  Vec w(3, 0.0);
  for (Arrival arrival : {Arrival::randomized, Arrival::semi_adversarial}) {
    DatasetEnv a(rows, LossKind::absolute, arrival, 1, 0.0, 77);
    DatasetEnv b(rows, LossKind::absolute, arrival, 1, 0.0, 77);
    DatasetEnv c(rows, LossKind::absolute, arrival, 1, 0.0, 78);
    bool differs = false;
    for (int t = 0; t < 6; ++t) {
      a.next_round(w);
      b.next_round(w);
      c.next_round(w);
      CHECK(a.last_served_row() == b.last_served_row());
      differs = differs || a.last_served_row() != c.last_served_row();
    }
    CHECK(differs);
  }
}

TEST_CASE("empty partition is rejected") {
  std::vector<LabeledSample> rows = {{{1.0}, 1.0}, {{2.0}, 2.0}};
  CHECK_THROWS_AS(DatasetEnv(rows, LossKind::absolute, Arrival::semi_adversarial, 1, 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("regret floor reference") {
  CHECK(adversarial_regret_floor({1.0}, {1}, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(adversarial_regret_floor({0.0, 0.0}, {3, 5}, 2.0) == 0.0);
  double base = adversarial_regret_floor({1.0, 0.5}, {2, 7}, 1.0);
  CHECK(adversarial_regret_floor({1.0, 0.5}, {2, 7}, 2.0) == doctest::Approx(2.0 * base));
}

}  // TEST_SUITE
