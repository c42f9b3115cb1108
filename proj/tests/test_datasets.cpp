#include <doctest.h>

#include <stdexcept>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "datasets.hpp"

using namespace oco;

namespace {

const std::string kDataDir = OCO_TEST_DATA_DIR;

// scratch CSV that cleans up after itself
struct TempCsv {
  explicit TempCsv(const std::string& content) {
    static int counter = 0;
    path = "oco_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << content;
  }
  ~TempCsv() { std::remove(path.c_str()); }
  std::string path;
};

TabularDataset from_rows(std::vector<LabeledSample> rows) {
  TabularDataset ds;
  ds.feature_count = rows.front().x.size();
  ds.rows = std::move(rows);
  return ds;
}

}  // namespace

TEST_SUITE("datasets") {

TEST_CASE("load toy csv") {
  TempCsv csv("1.0,2.0,10\n3.0,4.0,20\n5.0,6.0,30\n");
  TabularDataset ds = load_csv(csv.path, {2, {}});
  CHECK(ds.rows.size() == 3);
  CHECK(ds.feature_count == 2);
  CHECK(ds.rows[1].x == Vec{3.0, 4.0});
  CHECK(ds.rows[1].y == 20.0);
}

TEST_CASE("schema selects columns") {
  TempCsv csv("1,2,3,4\n5,6,7,8\n");
  TabularDataset ds = load_csv(csv.path, {0, {2, 1}});
  CHECK(ds.feature_count == 2);
  CHECK(ds.rows[0].x == Vec{3.0, 2.0});
  CHECK(ds.rows[0].y == 1.0);
}

TEST_CASE("wide files report their feature counts") {
  // same shapes as the spam (57 features + trailing label) and song
  // (leading target + 90 features) formats
  auto make_wide = [](std::size_t features, bool target_first) {
    std::string row;
    if (target_first) row += "7";
    for (std::size_t i = 0; i < features; ++i) {
      if (!row.empty()) row += ',';
      row += "0." + std::to_string(i % 10);
    }
    if (!target_first) row += ",1";
    return row + "\n" + row + "\n";
  };
  TempCsv spam(make_wide(57, false));
  CHECK(load_csv(spam.path, {57, {}}).feature_count == 57);
  TempCsv song(make_wide(90, true));
  CHECK(load_csv(song.path, {0, {}}).feature_count == 90);
}

TEST_CASE("malformed input is located") {
  TempCsv csv("1.0,2.0\n3.0,oops\n");
  try {
    load_csv(csv.path, {1, {}});
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }

  TempCsv empty("");
  CHECK_THROWS_AS(load_csv(empty.path, {0, {}}), std::runtime_error);
  CHECK_THROWS_AS(load_csv("no_such_file.csv", {0, {}}), std::runtime_error);

  TempCsv ragged("1,2\n1,2,3\n");
  CHECK_THROWS_AS(load_csv(ragged.path, {0, {}}), std::runtime_error);
}

TEST_CASE("normalization centers and scales") {
  TabularDataset ds = from_rows({{{1.0, 5.0}, 0.0}, {{3.0, 5.0}, 1.0}});
  TabularDataset n = normalize(ds);
  CHECK(n.rows[0].x[0] == doctest::Approx(-1.0));
  CHECK(n.rows[1].x[0] == doctest::Approx(1.0));
  // constant column flagged and zeroed
  CHECK(n.constant_features == std::vector<std::size_t>{1});
  CHECK(n.rows[0].x[1] == 0.0);
  CHECK(n.rows[1].x[1] == 0.0);
}

TEST_CASE("normalization invariants on the bundled file") {
  TabularDataset ds = normalize(load_csv(kDataDir + "/toy_regression.csv", {0, {}}));
  for (std::size_t j = 0; j < ds.feature_count; ++j) {
    double mean = 0.0, msq = 0.0;
    for (const auto& r : ds.rows) {
      mean += r.x[j];
      msq += r.x[j] * r.x[j];
    }
    mean /= static_cast<double>(ds.rows.size());
    msq /= static_cast<double>(ds.rows.size());
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(msq - 1.0) < 1e-9);
  }
}

TEST_CASE("target shift and bias") {
  TabularDataset ds = from_rows({{{1.0}, 1998.0}, {{2.0}, 2005.0}});
  TabularDataset shifted = shift_targets(ds, -2000.0);
  CHECK(shifted.rows[0].y == -2.0);
  CHECK(shifted.rows[1].y == 5.0);

  TabularDataset biased = append_bias(shifted);
  CHECK(biased.rows[0].x == Vec{1.0, 1.0});
  CHECK(biased.has_bias);
  CHECK_THROWS_AS(append_bias(biased), std::invalid_argument);
}

TEST_CASE("take truncates") {
  TabularDataset ds = from_rows({{{1.0}, 1.0}, {{2.0}, 2.0}, {{3.0}, 3.0}});
  CHECK(take(ds, 2).rows.size() == 2);
  CHECK(take(ds, 10).rows.size() == 3);
  CHECK_THROWS_AS(take(ds, 0), std::invalid_argument);
}

TEST_CASE("least-squares radius") {
  // two-point dataset with bias: x = [[1,1],[-1,1]], y = (2,-2) -> w = (2,0)
  TabularDataset ds = from_rows({{{1.0}, 2.0}, {{-1.0}, -2.0}});
  ds = append_bias(ds);
  CHECK(radius_for_ls(ds) == doctest::Approx(2.0));

  CHECK_THROWS_AS(radius_for_ls(from_rows({{{1.0}, 1.0}})), std::invalid_argument);  // no bias

  TabularDataset z2 = from_rows({{{0.0}, 1.0}, {{0.0}, 2.0}});
  z2.has_bias = true;  // mark the zero column as the whole design
  CHECK_THROWS_AS(radius_for_ls(z2), std::invalid_argument);
}

TEST_CASE("radius is a power of two and monotone") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double previous = 0.0;
  for (double target_scale : {0.3, 1.0, 2.5, 7.0, 20.0}) {
    std::vector<LabeledSample> rows;
    for (int i = 0; i < 50; ++i) {
      double x = gauss(rng);
      rows.push_back({{x}, target_scale * x + 0.01 * gauss(rng)});
    }
    TabularDataset ds = append_bias(from_rows(std::move(rows)));
    double r = radius_for_ls(ds);
    CHECK(r >= 1.0);
    CHECK(std::exp2(std::round(std::log2(r))) == r);
    CHECK(r >= previous);  // ||w|| grows with the target scale
    previous = r;
  }

  // exact power stays put: ||w|| = 4 (slightly shrunk by the ridge) -> 4
  TabularDataset ds = append_bias(from_rows({{{1.0}, 4.0}, {{-1.0}, -4.0}}));
  CHECK(radius_for_ls(ds) == 4.0);
  // just above a power rounds up: ||w|| = 3 -> 4
  TabularDataset ds3 = append_bias(from_rows({{{1.0}, 3.0}, {{-1.0}, -3.0}}));
  CHECK(radius_for_ls(ds3) == 4.0);
  // small solutions land on the floor radius 1
  TabularDataset tiny = append_bias(from_rows({{{1.0}, 0.1}, {{-1.0}, -0.1}}));
  CHECK(radius_for_ls(tiny) == 1.0);
}

TEST_CASE("partition splits and covers") {
  TabularDataset ds = from_rows({{{0.0}, 1999.0}, {{0.0}, 2000.0}, {{0.0}, 2001.0}});
  auto [lo, hi] = partition_indices(ds, 2000.0);
  CHECK(lo.size() == 1);
  CHECK(hi.size() == 2);

  // union covers everything exactly once
  std::vector<bool> seen(3, false);
  for (std::size_t i : lo) seen[i] = true;
  for (std::size_t i : hi) {
    CHECK(!seen[i]);
    seen[i] = true;
  }
  for (bool s : seen) CHECK(s);

  CHECK_THROWS_AS(partition_indices(ds, -1e9), std::invalid_argument);

  // binary labels split by a 0.5 threshold
  TabularDataset labels = from_rows({{{0.0}, 0.0}, {{0.0}, 1.0}, {{0.0}, 1.0}});
  auto [reg, spam] = partition_indices(labels, 0.5);
  CHECK(reg.size() == 1);
  CHECK(spam.size() == 2);
}

}  // TEST_SUITE
