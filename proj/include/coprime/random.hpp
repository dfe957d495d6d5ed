#pragma once

#include <complex>
#include <cstdint>

namespace coprime {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), built from the SplitMix64 finalizer. Draw order
/// and threading cannot change a realization.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept;

  /// Circular complex Gaussian with E|z|^2 = 1 (Box-Muller on draws
  /// 2*counter and 2*counter + 1).
  std::complex<double> complex_normal(std::uint64_t counter) const noexcept;

 private:
  std::uint64_t key_;
};

}  // namespace coprime
