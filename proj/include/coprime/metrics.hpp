#pragma once

// Variance of the correlogram estimate for white noise, and the
// multiplication/addition counts of autocorrelation estimation.

#include <string_view>

#include "coprime/bias_spectra.hpp"

namespace coprime {

struct VarianceReport {
  CoprimePair pair;
  RangeKind range;
  double s_b;
  /// Multiplier of sigma^4 in the covariance at omega1 = omega2.
  double factor;
};

VarianceReport variance_factor(const CoprimePair& pair, RangeKind range, double s_b);

/// Covariance of the correlogram against delta omega = omega1 - omega2:
/// the s_b = 1 biased window scaled by sigma^4 / s_b^2.
SpectrumCurve covariance_curve(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                               double sigma2, double s_b);

enum class ComplexityScheme { PrototypeContinuous, ExtendedFull, ExtendedContinuous, ExtendedPrototype };

inline constexpr ComplexityScheme kAllComplexitySchemes[] = {
    ComplexityScheme::PrototypeContinuous, ComplexityScheme::ExtendedFull,
    ComplexityScheme::ExtendedContinuous, ComplexityScheme::ExtendedPrototype};

std::string_view to_string(ComplexityScheme scheme) noexcept;

struct ComplexityReport {
  ComplexityScheme scheme;
  Count multiplications;
  Count additions;

  friend bool operator==(const ComplexityReport&, const ComplexityReport&) = default;
};

/// Closed-form counts over non-negative lags. PrototypeContinuous is only
/// derived for M > N; other orientations throw UnsupportedRegime.
ComplexityReport complexity(const CoprimePair& pair, ComplexityScheme scheme);

/// Same counts from the weight functions: sum of z(l) for multiplications,
/// sum of (z(l) - 1) over lags with z(l) >= 1 for additions.
ComplexityReport complexity_oracle(const CoprimePair& pair, ComplexityScheme scheme);

}  // namespace coprime
