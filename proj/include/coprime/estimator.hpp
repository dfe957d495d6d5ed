#pragma once

// Snapshot-based correlogram spectrum estimation on the extended co-prime
// sampling grid.

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "coprime/spectrum.hpp"
#include "coprime/weights.hpp"

namespace coprime {

struct ToneComponent {
  double frequency;  // radians per sample, in (-pi, pi]
  double amplitude;  // > 0
  /// Fixed phase; when empty the phase is uniform on [0, 2pi) per realization.
  std::optional<double> phase;
};

/// Complex exponentials plus circular complex white Gaussian noise.
struct SignalModel {
  std::vector<ToneComponent> components;
  double noise_power = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on repeated frequencies, non-positive
  /// amplitudes, frequencies outside (-pi, pi] or negative noise power.
  void validate() const;

  /// Unit tone at 0.4*pi, noise power 0.1.
  static SignalModel single_tone(std::uint64_t seed);
  /// Unit tones at 0.3*pi, 0.5*pi and 0.52*pi, noise power 0.1. The last
  /// two are closer than the Full-range lag support can resolve.
  static SignalModel three_tones(std::uint64_t seed);
  /// Unit tones at 0.3*pi, 0.5*pi and 0.7*pi, noise power 0.1.
  static SignalModel spread_tones(std::uint64_t seed);
};

/// x(t) for one time index. Deterministic in (seed, realization, t).
std::complex<double> signal_at(const SignalModel& model, Lag t, std::uint64_t realization);

Eigen::VectorXcd generate_signal(const SignalModel& model, Eigen::Index length,
                                 std::uint64_t realization = 0);

struct SnapshotData {
  Lag index;
  std::vector<Lag> times;  // absolute time indices, ascending
  Eigen::VectorXcd values;
};

/// Keeps the 2M+N-1 co-prime positions of period k. Throws InsufficientData
/// when the stream ends before 2MN(k+1).
SnapshotData sample_snapshot(const Eigen::VectorXcd& stream, const CoprimePair& pair, Lag k);

/// Same samples, evaluating the model only at the kept positions.
SnapshotData sample_snapshot(const SignalModel& model, const CoprimePair& pair, Lag k,
                             std::uint64_t realization = 0);

struct Biased {
  double s_b;
};
struct Unbiased {};
using Normalization = std::variant<Biased, Unbiased>;

struct AutocorrEstimate {
  CoprimePair pair;
  RangeKind range;
  Normalization normalization;
  Lag max_lag;
  Eigen::VectorXcd values;  // lags -max_lag..max_lag, zero at holes
  CountVector products;     // accumulated products per lag
  Count snapshots_used = 1;

  std::complex<double> at(Lag lag) const {
    return values(static_cast<Eigen::Index>(lag + max_lag));
  }
};

/// Sums x(i) conj(x(j)) over every ordered pair of kept samples with
/// t_i - t_j = l, then divides by s_b (biased) or by the number of
/// products (unbiased). Throws InvalidArgument for a malformed snapshot.
AutocorrEstimate autocorrelation(const SnapshotData& data, const CoprimePair& pair,
                                 RangeKind range, const Normalization& norm);

/// Precomputed cos/sin tables for evaluating correlograms on a fixed grid.
class CorrelogramKernel {
 public:
  CorrelogramKernel(const FrequencyGrid& grid, Lag max_lag);

  /// Re sum_l r(l) exp(-i omega l), assuming r(-l) = conj(r(l)).
  Eigen::VectorXd evaluate(const AutocorrEstimate& est) const;

  const FrequencyGrid& grid() const noexcept { return grid_; }
  Lag max_lag() const noexcept { return max_lag_; }

 private:
  FrequencyGrid grid_;
  Lag max_lag_;
  Eigen::MatrixXd cos_;  // K x max_lag, column l-1 holds cos(omega l)
  Eigen::MatrixXd sin_;
};

SpectrumCurve correlogram(const AutocorrEstimate& est, const FrequencyGrid& grid);

enum class Averaging {
  Correlograms,
  /// Average autocorrelations first; equal by linearity.
  Autocorrelations,
};

/// Mean over snapshots 0..snapshots-1 of one realization, accumulated in
/// snapshot order.
SpectrumCurve average_correlogram(const SignalModel& model, const CoprimePair& pair, Lag snapshots,
                                  RangeKind range, const FrequencyGrid& grid,
                                  const Normalization& norm, std::uint64_t realization = 0,
                                  Averaging averaging = Averaging::Correlograms);

struct Peak {
  double omega;
  double value;
};

/// k largest strict local maxima (neighbours wrap around the grid), by
/// value descending. Throws NotEnoughPeaks.
std::vector<Peak> detect_peaks(const SpectrumCurve& curve, std::size_t k);

}  // namespace coprime
