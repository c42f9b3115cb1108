#include "datasets.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oco {

namespace {

double parse_cell(const std::string& cell, std::size_t line, std::size_t col) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  // allow trailing whitespace only
  while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
  if (pos != cell.size() || cell.empty()) {
    throw std::runtime_error("csv: malformed cell at row " + std::to_string(line) + ", column " +
                             std::to_string(col + 1) + ": '" + cell + "'");
  }
  if (!std::isfinite(v)) {
    throw std::runtime_error("csv: non-finite value at row " + std::to_string(line) + ", column " +
                             std::to_string(col + 1));
  }
  return v;
}

}  // namespace

TabularDataset load_csv(const std::string& path, const ColumnSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");

  TabularDataset ds;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(parse_cell(cell, line_no, col));
      ++col;
    }
    if (expected_cols == 0) {
      expected_cols = cells.size();
      if (schema.target_column >= expected_cols) {
        throw std::runtime_error("csv: target column " + std::to_string(schema.target_column) +
                                 " out of range (file has " + std::to_string(expected_cols) + " columns)");
      }
      for (std::size_t f : schema.feature_columns) {
        if (f >= expected_cols) {
          throw std::runtime_error("csv: feature column " + std::to_string(f) + " out of range");
        }
      }
    } else if (cells.size() != expected_cols) {
      throw std::runtime_error("csv: row " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(expected_cols));
    }

    LabeledSample s;
    s.y = cells[schema.target_column];
    if (schema.feature_columns.empty()) {
      s.x.reserve(expected_cols - 1);
      for (std::size_t c = 0; c < expected_cols; ++c) {
        if (c != schema.target_column) s.x.push_back(cells[c]);
      }
    } else {
      s.x.reserve(schema.feature_columns.size());
      for (std::size_t f : schema.feature_columns) s.x.push_back(cells[f]);
    }
    ds.rows.push_back(std::move(s));
  }
  if (ds.rows.empty()) throw std::runtime_error("csv: '" + path + "' is empty");
  ds.feature_count = ds.rows.front().x.size();
  return ds;
}

TabularDataset normalize(const TabularDataset& ds) {
  if (ds.rows.empty()) throw std::invalid_argument("normalize: empty dataset");
  TabularDataset out = ds;
  const std::size_t n = out.rows.size();
  const std::size_t f = out.feature_count;  // bias, if present, sits past f and is skipped
  out.stats.assign(f, {});
  out.constant_features.clear();

  for (std::size_t j = 0; j < f; ++j) {
    double mean = 0.0;
    for (const auto& r : out.rows) mean += r.x[j];
    mean /= static_cast<double>(n);
    double msq = 0.0;
    for (const auto& r : out.rows) {
      double d = r.x[j] - mean;
      msq += d * d;
    }
    double rms = std::sqrt(msq / static_cast<double>(n));
    out.stats[j] = {mean, rms};
    if (rms == 0.0) {
      out.constant_features.push_back(j);
      for (auto& r : out.rows) r.x[j] = 0.0;
    } else {
      for (auto& r : out.rows) r.x[j] = (r.x[j] - mean) / rms;
    }
  }
  out.normalized = true;
  return out;
}

TabularDataset shift_targets(const TabularDataset& ds, double delta) {
  TabularDataset out = ds;
  for (auto& r : out.rows) r.y += delta;
  return out;
}

TabularDataset append_bias(const TabularDataset& ds) {
  if (ds.has_bias) throw std::invalid_argument("append_bias: bias already appended");
  TabularDataset out = ds;
  for (auto& r : out.rows) r.x.push_back(1.0);
  out.has_bias = true;
  return out;
}

TabularDataset take(const TabularDataset& ds, std::size_t n) {
  if (n == 0) throw std::invalid_argument("take: empty stream");
  TabularDataset out = ds;
  if (n < out.rows.size()) out.rows.resize(n);
  return out;
}

double radius_for_ls(const TabularDataset& ds) {
  if (!ds.has_bias) throw std::invalid_argument("radius_for_ls: bias must be appended first");
  const std::size_t n = ds.rows.size();
  const std::size_t d = ds.rows.front().x.size();

  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  bool any_nonzero = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ds.rows[i].x[j];
      if (ds.rows[i].x[j] != 0.0) any_nonzero = true;
    }
    y(static_cast<Eigen::Index>(i)) = ds.rows[i].y;
  }
  if (!any_nonzero) throw std::invalid_argument("radius_for_ls: all-zero design matrix");

  constexpr double kRidge = 1e-8;
  Eigen::MatrixXd gram = x.transpose() * x;
  gram.diagonal().array() += kRidge;
  Eigen::VectorXd w = gram.ldlt().solve(x.transpose() * y);
  double wn = w.norm();

  double r = 1.0;
  while (r < wn) r *= 2.0;
  return r;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition_indices(
    const TabularDataset& ds, double threshold) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    (ds.rows[i].y < threshold ? out.first : out.second).push_back(i);
  }
  if (out.first.empty() || out.second.empty()) {
    throw std::invalid_argument("partition: one side is empty at threshold " + std::to_string(threshold));
  }
  return out;
}

}  // namespace oco
