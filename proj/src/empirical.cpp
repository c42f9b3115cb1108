#include "empirical.hpp"

#include <stdexcept>

namespace oco {

GapHistogram::GapHistogram(bool exclude_current)
    : cursor_(counts_.cbegin()), exclude_current_(exclude_current) {}

void GapHistogram::advance_round() {
  ++elapsed_;
  while (cursor_ != counts_.cend() && cursor_->first < elapsed_) {
    z_ -= cursor_->second;
    ++cursor_;
  }
}

double GapHistogram::record_observation_and_estimate(long gap) {
  if (gap <= 0) throw std::invalid_argument("gap histogram: gap must be positive");
  if (gap < elapsed_) throw std::logic_error("gap histogram: gap behind the elapsed count");
  while (elapsed_ < gap) advance_round();

  double p_hat = 0.0;
  if (exclude_current_) {
    auto it = counts_.find(gap);
    long c_old = (it != counts_.cend()) ? it->second : 0;
    if (c_old > 0 && z_ > 0) p_hat = static_cast<double>(c_old) / static_cast<double>(z_);
  }

  auto [it, inserted] = counts_.try_emplace(gap, 0);
  ++it->second;
  ++k_;
  ++z_;  // the new record has gap == elapsed, so it joins the tail

  if (p_hat == 0.0) {
    // include-current estimate; always well defined, in [1/k, 1]
    p_hat = static_cast<double>(it->second) / static_cast<double>(z_);
  }

  elapsed_ = 1;
  z_ = k_;
  cursor_ = counts_.cbegin();
  return p_hat;
}

double GapHistogram::empirical_cdf(long d) const {
  if (k_ == 0 || d <= 0) return 0.0;
  long at_most = 0;
  for (const auto& [gap, count] : counts_) {
    if (gap > d) break;
    at_most += count;
  }
  return static_cast<double>(at_most) / static_cast<double>(k_);
}

void GapHistogram::dump_csv(std::ostream& os) const {
  os << "gap,count\n";
  for (const auto& [gap, count] : counts_) os << gap << ',' << count << '\n';
}

}  // namespace oco
