#ifndef OCO_DATASETS_HPP
#define OCO_DATASETS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "environments.hpp"
#include "geometry.hpp"

namespace oco {

struct ColumnSchema {
  std::size_t target_column = 0;
  // Empty means: every column except the target, in file order.
  std::vector<std::size_t> feature_columns;
};

struct FeatureStat {
  double mean = 0.0;
  double rms = 0.0;  // root mean square after centering; 0 marks a constant column
};

struct TabularDataset {
  std::vector<LabeledSample> rows;  // x excludes the bias until append_bias
  std::size_t feature_count = 0;    // excluding any appended bias
  bool has_bias = false;
  bool normalized = false;
  std::vector<FeatureStat> stats;              // filled by normalize
  std::vector<std::size_t> constant_features;  // zero-variance columns mapped to 0
};

// Headerless numeric CSV, one row per line. Malformed cells are reported
// with their 1-based row/column location.
TabularDataset load_csv(const std::string& path, const ColumnSchema& schema);

// Center each feature and scale so the sample mean of squares is 1.
// Constant columns become all-zeros and are flagged. The bias column, if
// already appended, is left untouched.
TabularDataset normalize(const TabularDataset& ds);

TabularDataset shift_targets(const TabularDataset& ds, double delta);
TabularDataset append_bias(const TabularDataset& ds);
TabularDataset take(const TabularDataset& ds, std::size_t n);

// Smallest power-of-two radius (>= 1) of an origin-centered ball containing
// the least-squares solution of the dataset (ridge 1e-8 for rank safety).
double radius_for_ls(const TabularDataset& ds);

// Row indices split by target threshold: first = targets below, second =
// the rest. Shuffling is the caller's business (per-trial seeds).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition_indices(
    const TabularDataset& ds, double threshold);

}  // namespace oco

#endif
