#pragma once

// Lag weight functions z(l): the number of sample pairs that contribute to
// the autocorrelation estimate at lag l.

#include <Eigen/Core>

#include "coprime/core_sets.hpp"

namespace coprime {

using CountVector = Eigen::Matrix<Count, Eigen::Dynamic, 1>;

/// Dense symmetric lag function on [-max_lag, max_lag]; entry i holds
/// lag i - max_lag.
struct WeightFunction {
  CoprimePair pair;
  RangeKind range;
  Lag max_lag;
  CountVector counts;

  Count at(Lag lag) const noexcept {
    if (lag < -max_lag || lag > max_lag) return 0;
    return counts(static_cast<Eigen::Index>(lag + max_lag));
  }
  Count total() const { return counts.sum(); }
  Lag s_b() const noexcept { return pair.sb(); }

  Eigen::VectorXd as_real() const { return counts.cast<double>(); }

  friend bool operator==(const WeightFunction& a, const WeightFunction& b) {
    return a.pair == b.pair && a.range == b.range && a.max_lag == b.max_lag &&
           a.counts == b.counts;
  }
};

/// The four summation terms of the closed form. Each carries one of the
/// zero-lag corrections, so a + b + c + d is the weight function itself.
struct WeightTerms {
  Lag max_lag;
  CountVector a;  // M-spaced self differences, (N-|n|+1) contributors
  CountVector b;  // N-spaced self differences, (2M-|m|) contributors
  CountVector c;  // prototype-cross lags, 2 contributors each; -1 at l = 0
  CountVector d;  // set-B-only lags, 1 contributor each, mirrored; -1 at l = 0

  CountVector sum() const { return a + b + c + d; }
};

/// Brute force: tallies the difference of every ordered pair of physical
/// sample positions (origin counted once), truncated to the range.
WeightFunction weight_oracle(const CoprimePair& pair, RangeKind range);

/// Term-by-term evaluation of the A/B/C/D summations with the range's
/// index limits.
WeightTerms weight_terms(const CoprimePair& pair, RangeKind range);
WeightFunction weight_closed_form(const CoprimePair& pair, RangeKind range);

/// Case analysis on the lag's set membership. Throws OutOfRange when
/// |lag| > 2MN-1.
Count weight_at(const CoprimePair& pair, Lag lag);

/// Lag availability on the range: 1 where z(l) >= 1, 0 at holes.
struct UnbiasedWindow {
  CoprimePair pair;
  RangeKind range;
  Lag max_lag;
  CountVector indicator;

  Count at(Lag lag) const noexcept {
    if (lag < -max_lag || lag > max_lag) return 0;
    return indicator(static_cast<Eigen::Index>(lag + max_lag));
  }
};

UnbiasedWindow unbiased_window(const CoprimePair& pair, RangeKind range);

/// Full-range indicator assembled from its five delta sums (N-spaced self,
/// prototype cross, origin, M-spaced self, set-B-only).
UnbiasedWindow unbiased_window_closed_form(const CoprimePair& pair);

/// Weights of the prototype co-prime array (M*n, n < N and N*m, m < M) by
/// pair enumeration, on [-max_lag, max_lag].
CountVector prototype_array_weights(const CoprimePair& pair, Lag max_lag);

}  // namespace coprime
