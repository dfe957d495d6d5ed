#include "coprime/metrics.hpp"

namespace coprime {

VarianceReport variance_factor(const CoprimePair& pair, RangeKind range, double s_b) {
  if (!(s_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "s_b must be positive");
  return {pair, range, s_b, static_cast<double>(main_peak(pair, range)) / (s_b * s_b)};
}

SpectrumCurve covariance_curve(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                               double sigma2, double s_b) {
  if (sigma2 < 0.0) throw Error(ErrorCode::InvalidArgument, "sigma^2 must be non-negative");
  if (!(s_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "s_b must be positive");
  SpectrumCurve curve = bias_biased(pair, range, grid, 1.0);
  curve.values *= sigma2 * sigma2 / (s_b * s_b);
  return curve;
}

std::string_view to_string(ComplexityScheme scheme) noexcept {
  switch (scheme) {
    case ComplexityScheme::PrototypeContinuous: return "prototype-continuous";
    case ComplexityScheme::ExtendedFull: return "extended-full";
    case ComplexityScheme::ExtendedContinuous: return "extended-continuous";
    case ComplexityScheme::ExtendedPrototype: return "extended-prototype";
  }
  return "?";
}

ComplexityReport complexity(const CoprimePair& pair, ComplexityScheme scheme) {
  const Count M = pair.M();
  const Count N = pair.N();
  switch (scheme) {
    case ComplexityScheme::PrototypeContinuous: {
      if (M < N) {
        throw Error(ErrorCode::UnsupportedRegime,
                    "prototype continuous-range counts are derived for M > N only");
      }
      const Count q = (M + N - 1) / N;
      // (q+1)(M - q/2 - 2), always an integer.
      const Count shared = (q + 1) * (2 * M - q - 4) / 2;
      return {scheme, 2 * M + 4 * N - 4 + shared, M + 3 * N - 4 + shared};
    }
    case ComplexityScheme::ExtendedFull:
      return {scheme, (2 * M + N) * (2 * M + N - 1) / 2, (4 * M * M + N * N + M * N - 3 * M - 1) / 2};
    case ComplexityScheme::ExtendedContinuous: {
      const Count f = (M - 1) / N;
      Count floors = 0;
      for (Count n = 1; n <= N - 1; ++n) floors += (M + M * n - 1) / N;
      const Count tail = f * (2 * M - 1 - f);
      return {scheme, (N * N + 3 * M * M + 2 * M * N + N + M + tail) / 2 + floors - 1,
              (N * N + 3 * M * M + N - M + tail) / 2 + floors - 1};
    }
    case ComplexityScheme::ExtendedPrototype: {
      Count floors = 0;
      for (Count n = 1; n <= N - 1; ++n) floors += (M * n - 1) / N;
      return {scheme, (N * N + 3 * M * M + N - M + 2 * M * N) / 2 + floors - 1,
              (N * N + 3 * M * M + N - M) / 2 + floors - 1};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown complexity scheme");
}

namespace {

ComplexityReport counts_from_weights(ComplexityScheme scheme, const CountVector& weights,
                                     Lag max_lag) {
  const auto half = weights.tail(max_lag + 1);
  const Count products = half.sum();
  const Count occupied = (half.array() >= 1).count();
  return {scheme, products, products - occupied};
}

}  // namespace

ComplexityReport complexity_oracle(const CoprimePair& pair, ComplexityScheme scheme) {
  switch (scheme) {
    case ComplexityScheme::PrototypeContinuous: {
      const Lag max_lag = pair.M() + pair.N() - 1;
      return counts_from_weights(scheme, prototype_array_weights(pair, max_lag), max_lag);
    }
    case ComplexityScheme::ExtendedFull:
    case ComplexityScheme::ExtendedContinuous:
    case ComplexityScheme::ExtendedPrototype: {
      const RangeKind range = scheme == ComplexityScheme::ExtendedFull         ? RangeKind::Full
                              : scheme == ComplexityScheme::ExtendedContinuous ? RangeKind::Continuous
                                                                               : RangeKind::Prototype;
      const WeightFunction z = weight_oracle(pair, range);
      return counts_from_weights(scheme, z.counts, z.max_lag);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown complexity scheme");
}

}  // namespace coprime
