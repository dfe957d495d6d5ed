#pragma once

// Correlogram bias windows of the extended co-prime array in closed form,
// their main-lobe peaks, and side-lobe analysis.

#include <cmath>

#include "coprime/spectrum.hpp"
#include "coprime/weights.hpp"

namespace coprime {

/// sin(q x) / sin(x), continued by its limit q cos(q x) / cos(x) where
/// |sin(x)| < 1e-12. At x = 0 that is q; at other multiples of pi it is
/// +-q depending on parity.
template <typename Scalar>
Scalar sin_ratio(Lag q, Scalar x) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Scalar qs = static_cast<Scalar>(q);
  const Scalar denom = sin(x);
  if (abs(denom) < Scalar(1e-12)) return qs * cos(qs * x) / cos(x);
  return sin(qs * x) / denom;
}

/// Transforms of the four weight terms at one frequency; their sum is the
/// biased bias window with s_b = 1.
template <typename Scalar>
struct BiasTerms {
  Scalar a;
  Scalar b;
  Scalar c;
  Scalar d;

  Scalar total() const { return a + b + c + d; }
};

template <typename Scalar>
BiasTerms<Scalar> biased_terms_at(const CoprimePair& pair, RangeKind range, Scalar omega) {
  using std::cos;
  const Lag M = pair.M();
  const Lag N = pair.N();
  const Scalar half_m = omega * static_cast<Scalar>(M) / Scalar(2);
  const Scalar half_n = omega * static_cast<Scalar>(N) / Scalar(2);

  BiasTerms<Scalar> t{};
  const Scalar fejer_m = sin_ratio(N, half_m);
  t.a = fejer_m * fejer_m + sin_ratio(2 * N - 1, half_m);

  const Scalar cross = sin_ratio(N - 1, half_m) * sin_ratio(M - 1, half_n);
  t.c = Scalar(2) * cross - Scalar(1);

  const Scalar mn = static_cast<Scalar>(M * N);
  switch (range) {
    case RangeKind::Full: {
      const Scalar fejer_n = sin_ratio(2 * M, half_n);
      t.b = fejer_n * fejer_n;
      t.d = Scalar(2) * cos(omega * mn) * cross - Scalar(1);
      return t;
    }
    case RangeKind::Continuous:
    case RangeKind::Prototype: {
      if (range == RangeKind::Continuous) {
        const Lag k = M + (M - 1) / N;
        const Scalar fejer_n = sin_ratio(k + 1, half_n);
        t.b = fejer_n * fejer_n + static_cast<Scalar>(2 * M - k - 1) * sin_ratio(2 * k + 1, half_n);
      } else {
        const Scalar fejer_n = sin_ratio(M, half_n);
        t.b = fejer_n * fejer_n + static_cast<Scalar>(M) * sin_ratio(2 * M - 1, half_n);
      }
      const Lag extra = range == RangeKind::Continuous ? M : 0;
      Scalar d = Scalar(0);
      for (Lag n = 1; n <= N - 1; ++n) {
        const Lag upper = (M * N + extra + M * n - 1) / N;
        const Scalar centre = static_cast<Scalar>(M * n) - mn / Scalar(2) -
                              static_cast<Scalar>(N * (upper + 1)) / Scalar(2);
        d += Scalar(2) * cos(omega * centre) * sin_ratio(upper - M, half_n);
      }
      t.d = d - Scalar(1);
      return t;
    }
  }
  return t;
}

template <typename Scalar>
Scalar bias_biased_at(const CoprimePair& pair, RangeKind range, Scalar omega, Scalar s_b = 1) {
  return biased_terms_at(pair, range, omega).total() / s_b;
}

/// Transform of the unbiased-estimator window: the five-term form for the
/// full range, a Dirichlet kernel of half-length L otherwise.
template <typename Scalar>
Scalar bias_unbiased_at(const CoprimePair& pair, RangeKind range, Scalar omega) {
  using std::cos;
  if (range != RangeKind::Full) {
    return sin_ratio(2 * range_limit(pair, range) + 1, omega / Scalar(2));
  }
  const Lag M = pair.M();
  const Lag N = pair.N();
  const Scalar mn = static_cast<Scalar>(M * N);
  const Scalar half_m = omega * static_cast<Scalar>(M) / Scalar(2);
  const Scalar half_n = omega * static_cast<Scalar>(N) / Scalar(2);
  const Scalar self_m = sin_ratio(N - 1, half_m);
  return Scalar(2) * cos(omega * mn / Scalar(2)) * self_m +
         Scalar(2) * cos(omega * mn) * sin_ratio(2 * M - 1, half_n) + Scalar(1) +
         (Scalar(1) + Scalar(2) * cos(omega * mn)) * self_m * sin_ratio(M - 1, half_n);
}

SpectrumCurve bias_unbiased(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid);
SpectrumCurve bias_biased(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                          double s_b = 1.0);

struct BiasTermCurves {
  SpectrumCurve a, b, c, d, total;
};

/// Per-term curves with s_b = 1.
BiasTermCurves biased_term_curves(const CoprimePair& pair, RangeKind range,
                                  const FrequencyGrid& grid);

SpectrumCurve dtft_of_window(const WeightFunction& weights, const FrequencyGrid& grid);
SpectrumCurve dtft_of_window(const UnbiasedWindow& window, const FrequencyGrid& grid);

/// Bias-window value at omega = 0 with s_b = 1, for any M, N >= 1.
Count full_peak_formula(Lag M, Lag N) noexcept;
Count continuous_peak_formula(Lag M, Lag N) noexcept;
Count prototype_peak_formula(Lag M, Lag N) noexcept;

Count main_peak(const CoprimePair& pair, RangeKind range) noexcept;

struct SideLobe {
  double omega;
  double value;
};

/// Largest strict local maximum on [-pi, 0] outside the main lobe. The main
/// lobe is the run from omega = 0 leftwards down to the first local minimum.
/// Neighbours wrap around the periodic grid. Throws NoSideLobe.
SideLobe side_lobe_peak(const SpectrumCurve& curve);

struct PeakReport {
  double main_peak;
  double side_peak;
  double side_peak_omega;
  double relative_amplitude;
};

/// R = (P_m - P_s) / P_m on the biased window scaled by 1/s_b.
PeakReport relative_amplitude(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                              double s_b = 1.0);

}  // namespace coprime
