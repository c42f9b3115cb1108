#include <doctest.h>

#include <stdexcept>
#include <random>
#include <sstream>

#include "empirical.hpp"
#include "oracles.hpp"

using namespace oco;

TEST_SUITE("empirical") {

TEST_CASE("tail count shrinks as the gap grows") {
  // records {1,1,3}: moving from elapsed 1 to 2 drops both 1s
  GapHistogram h;
  h.record_observation_and_estimate(1);
  h.record_observation_and_estimate(1);
  h.record_observation_and_estimate(3);
  CHECK(h.observations() == 3);
  CHECK(h.elapsed() == 1);
  CHECK(h.tail_count() == 3);
  h.advance_round();
  CHECK(h.elapsed() == 2);
  CHECK(h.tail_count() == 1);
  h.advance_round();
  h.advance_round();  // elapsed 4, beyond every record
  CHECK(h.tail_count() == 0);
}

TEST_CASE("fresh histogram") {
  GapHistogram h;
  CHECK(h.record_observation_and_estimate(1) == 1.0);  // single-sample estimate
  CHECK(h.observations() == 1);
  CHECK(h.tail_count() == 1);  // elapsed 1 again, the one record counts
}

TEST_CASE("worked estimates") {
  // history {1,1}, current gap 2: one record equal, one at least -> 1
  GapHistogram a;
  a.record_observation_and_estimate(1);
  a.record_observation_and_estimate(1);
  CHECK(a.record_observation_and_estimate(2) == 1.0);

  // history {1,2}, current gap 1: counts {1:2, 2:1} -> 2/3
  GapHistogram b;
  b.record_observation_and_estimate(1);
  b.record_observation_and_estimate(2);
  CHECK(b.record_observation_and_estimate(1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("rejects bad gaps") {
  GapHistogram h;
  CHECK_THROWS_AS(h.record_observation_and_estimate(0), std::invalid_argument);
  CHECK_THROWS_AS(h.record_observation_and_estimate(-2), std::invalid_argument);
  h.advance_round();
  h.advance_round();  // elapsed 3
  CHECK_THROWS_AS(h.record_observation_and_estimate(2), std::logic_error);
}

TEST_CASE("cdf") {
  GapHistogram h;
  h.record_observation_and_estimate(1);
  h.record_observation_and_estimate(1);
  h.record_observation_and_estimate(2);
  CHECK(h.empirical_cdf(1) == doctest::Approx(2.0 / 3.0));
  CHECK(h.empirical_cdf(2) == 1.0);
  CHECK(h.empirical_cdf(100) == 1.0);
  CHECK(h.empirical_cdf(0) == 0.0);
}

TEST_CASE("estimate equals the cdf ratio form") {
  // p_hat = (F(d) - F(d-1)) / (1 - F(d-1)) with the current gap included
  std::mt19937_64 rng(4);
  GapHistogram h;
  oracles::RecountingGapOracle oracle;
  std::geometric_distribution<long> geo(0.35);
  for (int k = 0; k < 2000; ++k) {
    long gap = 1 + geo(rng);
    double p_hat = h.record_observation_and_estimate(gap);
    oracle.record(gap);
    double f_d = oracle.cdf(gap);
    double f_dm1 = oracle.cdf(gap - 1);
    CHECK(p_hat == doctest::Approx((f_d - f_dm1) / (1.0 - f_dm1)).epsilon(1e-12));
  }
}

TEST_CASE("incremental bookkeeping equals naive recount") {
  std::mt19937_64 rng(11);
  for (int stream = 0; stream < 5; ++stream) {
    GapHistogram h;
    oracles::RecountingGapOracle oracle;
    std::geometric_distribution<long> geo(0.2);
    for (int k = 0; k < 10000; ++k) {
      long gap = 1 + geo(rng);
      // exact equality: both sides divide the same two integers
      CHECK(h.record_observation_and_estimate(gap) == oracle.record(gap));
    }
  }
}

TEST_CASE("estimate range under the include-current rule") {
  std::mt19937_64 rng(23);
  GapHistogram h;
  std::uniform_int_distribution<long> gap_d(1, 40);
  for (int k = 1; k <= 3000; ++k) {
    double p = h.record_observation_and_estimate(gap_d(rng));
    CHECK(p >= 1.0 / static_cast<double>(k));
    CHECK(p <= 1.0);
  }
}

TEST_CASE("exclude-current fidelity mode") {
  GapHistogram h(/*exclude_current=*/true);
  // nothing recorded: falls back to the include-current value
  CHECK(h.record_observation_and_estimate(2) == 1.0);
  // history {2}, gap 2 again: history-only ratio 1/1
  CHECK(h.record_observation_and_estimate(2) == 1.0);
  // history {2,2}, gap 1: zero history count at 1 -> include-current fallback 1/3
  CHECK(h.record_observation_and_estimate(1) == doctest::Approx(1.0 / 3.0));
  // history {1,2,2}, gap 2: history ratio 2/2 = 1
  CHECK(h.record_observation_and_estimate(2) == 1.0);
  // history {1,2,2,2}, gap 1: history ratio 1/4
  CHECK(h.record_observation_and_estimate(1) == doctest::Approx(0.25));
}

TEST_CASE("estimator error shrinks with observations") {
  // geometric gaps with fixed p: the mean |1/p - 1/p_hat| over late
  // observations must drop below the early mean
  for (double p : {0.1, 0.3, 0.7}) {
    for (int seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(1000 * seed + static_cast<int>(p * 10));
      std::geometric_distribution<long> geo(p);
      GapHistogram h;
      double early = 0.0, late = 0.0;
      for (int k = 1; k <= 10000; ++k) {
        double p_hat = h.record_observation_and_estimate(1 + geo(rng));
        double err = std::abs(1.0 / p - 1.0 / p_hat);
        if (k <= 100) early += err;
        if (k > 5000) late += err;
      }
      early /= 100.0;
      late /= 5000.0;
      CHECK(late < early);
    }
  }
}

TEST_CASE("csv dump") {
  GapHistogram h;
  h.record_observation_and_estimate(3);
  h.record_observation_and_estimate(1);
  h.record_observation_and_estimate(3);
  std::ostringstream os;
  h.dump_csv(os);
  CHECK(os.str() == "gap,count\n1,1\n3,2\n");
}

}  // TEST_SUITE
