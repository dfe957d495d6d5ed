#include "coprime/weights.hpp"

#include <cstdlib>

namespace coprime {

namespace {

class LagTally {
 public:
  explicit LagTally(Lag max_lag) : max_lag_(max_lag), counts_(CountVector::Zero(2 * max_lag + 1)) {}

  void add(Lag lag, Count amount) {
    if (lag < -max_lag_ || lag > max_lag_) {
      throw Error(ErrorCode::NumericMismatch,
                  "lag " + std::to_string(lag) + " falls outside +-" + std::to_string(max_lag_));
    }
    counts_(static_cast<Eigen::Index>(lag + max_lag_)) += amount;
  }

  // Pair enumeration truncates instead of rejecting.
  void add_if_inside(Lag lag, Count amount) {
    if (lag >= -max_lag_ && lag <= max_lag_) counts_(static_cast<Eigen::Index>(lag + max_lag_)) += amount;
  }

  CountVector take() { return std::move(counts_); }

 private:
  Lag max_lag_;
  CountVector counts_;
};

CountVector pair_differences(const std::vector<Lag>& positions, Lag max_lag) {
  LagTally tally(max_lag);
  for (Lag a : positions) {
    for (Lag b : positions) tally.add_if_inside(a - b, 1);
  }
  return tally.take();
}

// Largest m of the N-spaced self term, B-term index bound.
Lag self_n_bound(const CoprimePair& pair, RangeKind range) {
  switch (range) {
    case RangeKind::Full: return 2 * pair.M() - 1;
    case RangeKind::Continuous: return pair.continuous_limit() / pair.N();
    case RangeKind::Prototype: return pair.M() - 1;
  }
  return 0;
}

// Upper m limit of the set-B-only term for a given n (D-term limit).
Lag set_b_bound(const CoprimePair& pair, RangeKind range, Lag n) {
  const Lag M = pair.M();
  const Lag N = pair.N();
  switch (range) {
    case RangeKind::Full: return 2 * M - 1;
    // Mn - Nm >= -(MN+M-1)
    case RangeKind::Continuous: return (M * N + M + M * n - 1) / N;
    // Mn - Nm >= -(MN-1)
    case RangeKind::Prototype: return (M * N + M * n - 1) / N;
  }
  return 0;
}

}  // namespace

WeightFunction weight_oracle(const CoprimePair& pair, RangeKind range) {
  const Lag max_lag = range_limit(pair, range);
  return {pair, range, max_lag, pair_differences(sampler_positions(pair).combined(), max_lag)};
}

WeightTerms weight_terms(const CoprimePair& pair, RangeKind range) {
  const Lag M = pair.M();
  const Lag N = pair.N();
  const Lag max_lag = range_limit(pair, range);

  LagTally a(max_lag);
  for (Lag n = -(N - 1); n <= N - 1; ++n) a.add(M * n, N - std::abs(n) + 1);

  LagTally b(max_lag);
  const Lag m_bound = self_n_bound(pair, range);
  for (Lag m = -m_bound; m <= m_bound; ++m) b.add(N * m, 2 * M - std::abs(m));

  LagTally c(max_lag);
  for (Lag n = 1; n <= N - 1; ++n) {
    for (Lag m = 1; m <= M - 1; ++m) c.add(M * n - N * m, 2);
  }
  c.add(0, -1);

  // Mn - Nm is negative on set B; the magnitude is placed at both signs.
  LagTally d(max_lag);
  for (Lag n = 1; n <= N - 1; ++n) {
    const Lag m_hi = std::min(set_b_bound(pair, range, n), 2 * M - 1);
    for (Lag m = M + 1; m <= m_hi; ++m) {
      const Lag lag = std::abs(M * n - N * m);
      d.add(lag, 1);
      d.add(-lag, 1);
    }
  }
  d.add(0, -1);

  return {max_lag, a.take(), b.take(), c.take(), d.take()};
}

WeightFunction weight_closed_form(const CoprimePair& pair, RangeKind range) {
  const WeightTerms terms = weight_terms(pair, range);
  return {pair, range, terms.max_lag, terms.sum()};
}

namespace {

// Index m of a representation lag = M*n - N*m with n in [0, N-1],
// m in [0, 2M-1], if one exists. Representations in C+ are unique.
std::optional<Lag> cross_index(const CoprimePair& pair, Lag lag) {
  for (Lag n = 0; n < pair.N(); ++n) {
    const Lag rest = pair.M() * n - lag;
    if (rest % pair.N() != 0) continue;
    const Lag m = rest / pair.N();
    if (m >= 0 && m < 2 * pair.M()) return m;
  }
  return std::nullopt;
}

}  // namespace

Count weight_at(const CoprimePair& pair, Lag lag) {
  const Lag M = pair.M();
  const Lag N = pair.N();
  if (std::abs(lag) > pair.full_limit()) {
    throw Error(ErrorCode::OutOfRange, "lag " + std::to_string(lag) + " exceeds 2MN-1");
  }
  if (lag == 0) return 2 * M + N - 1;
  const Lag mag = std::abs(lag);
  if (mag % M == 0 && mag / M <= N - 1) return (N - mag / M) + 1;
  if (mag % N == 0 && mag / N <= 2 * M - 1) return 2 * M - mag / N;

  // Cross-only lag: it lives in A (m < M) or B (m >= M), as l or -l.
  bool in_a = false;
  bool in_b = false;
  for (Lag candidate : {lag, -lag}) {
    if (const auto m = cross_index(pair, candidate)) {
      (*m < M ? in_a : in_b) = true;
    }
  }
  if (in_a) return 2;
  if (in_b) return 1;
  return 0;
}

UnbiasedWindow unbiased_window(const CoprimePair& pair, RangeKind range) {
  const WeightFunction z = weight_oracle(pair, range);
  return {pair, range, z.max_lag, (z.counts.array() > 0).cast<Count>().matrix()};
}

UnbiasedWindow unbiased_window_closed_form(const CoprimePair& pair) {
  const Lag M = pair.M();
  const Lag N = pair.N();
  const Lag max_lag = pair.full_limit();
  LagTally w(max_lag);
  for (Lag m = 1; m <= 2 * M - 1; ++m) {
    w.add(N * m, 1);
    w.add(-N * m, 1);
  }
  for (Lag n = 1; n <= N - 1; ++n) {
    for (Lag m = 1; m <= M - 1; ++m) w.add(M * n - N * m, 1);
  }
  w.add(0, 1);
  for (Lag n = 1; n <= N - 1; ++n) {
    w.add(M * n, 1);
    w.add(-M * n, 1);
  }
  for (Lag n = 1; n <= N - 1; ++n) {
    for (Lag m = M + 1; m <= 2 * M - 1; ++m) {
      const Lag lag = -(M * n - N * m);
      w.add(lag, 1);
      w.add(-lag, 1);
    }
  }
  return {pair, RangeKind::Full, max_lag, w.take()};
}

CountVector prototype_array_weights(const CoprimePair& pair, Lag max_lag) {
  std::vector<Lag> positions;
  for (Lag n = 0; n < pair.N(); ++n) positions.push_back(pair.M() * n);
  for (Lag m = 1; m < pair.M(); ++m) positions.push_back(pair.N() * m);
  return pair_differences(positions, max_lag);
}

}  // namespace coprime
