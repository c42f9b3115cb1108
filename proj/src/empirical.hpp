#ifndef OCO_EMPIRICAL_HPP
#define OCO_EMPIRICAL_HPP

#include <map>
#include <ostream>

namespace oco {

// Online empirical distribution over inter-observation gaps, with the
// plug-in conditional observation probability
//   p_hat = #{recorded gaps == current gap} / #{recorded gaps >= current gap}.
//
// By default the current gap is inserted into the records before the
// estimate is formed (include-current rule), which keeps p_hat in [1/k, 1].
// The exclude_current flag reproduces the history-only estimate instead and
// falls back to the include-current value whenever the history-only ratio is
// degenerate (0 numerator or 0 denominator).
class GapHistogram {
 public:
  explicit GapHistogram(bool exclude_current = false);

  // One more round passed without an observation. Amortized O(1): the
  // cursor walks the ascending gap records once per segment, shrinking the
  // tail count Z as the elapsed gap passes each record.
  void advance_round();

  // Record an observation `gap` rounds after the previous one and return
  // p_hat. `gap` must match the elapsed count; if it is ahead (caller did
  // not tick every round), the histogram fast-forwards. Resets the elapsed
  // counter for the next segment.
  double record_observation_and_estimate(long gap);

  // Fraction of recorded gaps <= d. Diagnostic path, O(#distinct gaps).
  double empirical_cdf(long d) const;

  long observations() const { return k_; }     // total gaps recorded
  long elapsed() const { return elapsed_; }    // current gap if observed now
  long tail_count() const { return z_; }       // Z = #{recorded gaps >= elapsed}

  // (gap, count) pairs as CSV, ascending.
  void dump_csv(std::ostream& os) const;

 private:
  std::map<long, long> counts_;  // ascending gap -> occurrences
  std::map<long, long>::const_iterator cursor_;  // first record >= elapsed
  long k_ = 0;
  long elapsed_ = 1;
  long z_ = 0;
  bool exclude_current_;
};

}  // namespace oco

#endif
