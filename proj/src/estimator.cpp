#include "coprime/estimator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "coprime/random.hpp"

namespace coprime {

namespace {

constexpr double kPi = std::numbers::pi;

CounterRng phase_rng(const SignalModel& model, std::uint64_t realization) {
  return {model.seed, 2 * realization};
}

CounterRng noise_rng(const SignalModel& model, std::uint64_t realization) {
  return {model.seed, 2 * realization + 1};
}

std::vector<double> phases(const SignalModel& model, std::uint64_t realization) {
  const CounterRng rng = phase_rng(model, realization);
  std::vector<double> out;
  out.reserve(model.components.size());
  for (std::size_t k = 0; k < model.components.size(); ++k) {
    const auto& c = model.components[k];
    out.push_back(c.phase ? *c.phase : 2.0 * kPi * rng.uniform(k));
  }
  return out;
}

std::complex<double> sample(const SignalModel& model, const std::vector<double>& phi,
                            const CounterRng& noise, Lag t) {
  std::complex<double> x{0.0, 0.0};
  for (std::size_t k = 0; k < model.components.size(); ++k) {
    const auto& c = model.components[k];
    x += std::polar(c.amplitude, c.frequency * static_cast<double>(t) + phi[k]);
  }
  if (model.noise_power > 0.0) {
    x += std::sqrt(model.noise_power) * noise.complex_normal(static_cast<std::uint64_t>(t));
  }
  return x;
}

}  // namespace

void SignalModel::validate() const {
  if (!(noise_power >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise power must be >= 0");
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (!(c.amplitude > 0.0)) throw Error(ErrorCode::InvalidArgument, "amplitudes must be positive");
    if (!(c.frequency > -kPi && c.frequency <= kPi)) {
      throw Error(ErrorCode::InvalidArgument, "frequencies must lie in (-pi, pi]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (components[j].frequency == c.frequency) {
        throw Error(ErrorCode::InvalidArgument, "frequencies must be distinct");
      }
    }
  }
}

SignalModel SignalModel::single_tone(std::uint64_t seed) {
  return {{{0.4 * kPi, 1.0, std::nullopt}}, 0.1, seed};
}

SignalModel SignalModel::three_tones(std::uint64_t seed) {
  return {{{0.3 * kPi, 1.0, std::nullopt}, {0.5 * kPi, 1.0, std::nullopt}, {0.52 * kPi, 1.0, std::nullopt}},
          0.1,
          seed};
}

SignalModel SignalModel::spread_tones(std::uint64_t seed) {
  return {{{0.3 * kPi, 1.0, std::nullopt}, {0.5 * kPi, 1.0, std::nullopt}, {0.7 * kPi, 1.0, std::nullopt}},
          0.1,
          seed};
}

std::complex<double> signal_at(const SignalModel& model, Lag t, std::uint64_t realization) {
  model.validate();
  return sample(model, phases(model, realization), noise_rng(model, realization), t);
}

Eigen::VectorXcd generate_signal(const SignalModel& model, Eigen::Index length,
                                 std::uint64_t realization) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "signal length must be >= 1");
  model.validate();
  const auto phi = phases(model, realization);
  const CounterRng noise = noise_rng(model, realization);
  Eigen::VectorXcd out(length);
  for (Eigen::Index t = 0; t < length; ++t) out(t) = sample(model, phi, noise, t);
  return out;
}

SnapshotData sample_snapshot(const Eigen::VectorXcd& stream, const CoprimePair& pair, Lag k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "snapshot index must be >= 0");
  const Lag offset = pair.period() * k;
  if (stream.size() < offset + pair.period()) {
    throw Error(ErrorCode::InsufficientData,
                "snapshot " + std::to_string(k) + " needs " +
                    std::to_string(offset + pair.period()) + " samples, stream has " +
                    std::to_string(stream.size()));
  }
  const auto positions = sampler_positions(pair).combined();
  SnapshotData data{k, {}, Eigen::VectorXcd(static_cast<Eigen::Index>(positions.size()))};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    data.times.push_back(offset + positions[i]);
    data.values(static_cast<Eigen::Index>(i)) = stream(offset + positions[i]);
  }
  return data;
}

SnapshotData sample_snapshot(const SignalModel& model, const CoprimePair& pair, Lag k,
                             std::uint64_t realization) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "snapshot index must be >= 0");
  model.validate();
  const auto phi = phases(model, realization);
  const CounterRng noise = noise_rng(model, realization);
  const Lag offset = pair.period() * k;
  const auto positions = sampler_positions(pair).combined();
  SnapshotData data{k, {}, Eigen::VectorXcd(static_cast<Eigen::Index>(positions.size()))};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    data.times.push_back(offset + positions[i]);
    data.values(static_cast<Eigen::Index>(i)) = sample(model, phi, noise, offset + positions[i]);
  }
  return data;
}

AutocorrEstimate autocorrelation(const SnapshotData& data, const CoprimePair& pair,
                                 RangeKind range, const Normalization& norm) {
  const auto positions = sampler_positions(pair).combined();
  const Lag offset = pair.period() * data.index;
  if (data.times.size() != positions.size() ||
      data.values.size() != static_cast<Eigen::Index>(positions.size())) {
    throw Error(ErrorCode::InvalidArgument, "snapshot must hold exactly 2M+N-1 samples");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (data.times[i] != offset + positions[i]) {
      throw Error(ErrorCode::InvalidArgument,
                  "snapshot time " + std::to_string(data.times[i]) + " is not a co-prime position");
    }
  }
  if (const auto* b = std::get_if<Biased>(&norm); b && !(b->s_b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "s_b must be positive");
  }

  const Lag max_lag = range_limit(pair, range);
  const Eigen::Index size = 2 * max_lag + 1;
  AutocorrEstimate est{pair, range, norm, max_lag, Eigen::VectorXcd::Zero(size),
                       CountVector::Zero(size), 1};

  const auto count = static_cast<Eigen::Index>(data.times.size());
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) {
      const Lag lag = data.times[static_cast<std::size_t>(i)] - data.times[static_cast<std::size_t>(j)];
      if (lag < 0 || lag > max_lag) continue;
      est.values(max_lag + lag) += data.values(i) * std::conj(data.values(j));
      ++est.products(max_lag + lag);
    }
  }
  for (Lag lag = 1; lag <= max_lag; ++lag) est.products(max_lag - lag) = est.products(max_lag + lag);
  assert(est.products == weight_oracle(pair, range).counts);

  for (Lag lag = 0; lag <= max_lag; ++lag) {
    std::complex<double>& r = est.values(max_lag + lag);
    if (std::holds_alternative<Biased>(norm)) {
      r /= std::get<Biased>(norm).s_b;
    } else if (const Count z = est.products(max_lag + lag); z > 0) {
      r /= static_cast<double>(z);
    }
    est.values(max_lag - lag) = std::conj(r);
  }
  est.values(max_lag) = est.values(max_lag).real();
  return est;
}

CorrelogramKernel::CorrelogramKernel(const FrequencyGrid& grid, Lag max_lag)
    : grid_(grid), max_lag_(max_lag), cos_(grid.size(), max_lag), sin_(grid.size(), max_lag) {
  for (Lag l = 1; l <= max_lag; ++l) {
    const Eigen::ArrayXd phase = grid.omegas().array() * static_cast<double>(l);
    cos_.col(l - 1) = phase.cos().matrix();
    sin_.col(l - 1) = phase.sin().matrix();
  }
}

Eigen::VectorXd CorrelogramKernel::evaluate(const AutocorrEstimate& est) const {
  if (est.max_lag != max_lag_) {
    throw Error(ErrorCode::InvalidArgument, "estimate lag support does not match the kernel");
  }
  const auto positive = est.values.tail(max_lag_);
  Eigen::VectorXd out = Eigen::VectorXd::Constant(grid_.size(), est.at(0).real());
  out.noalias() += 2.0 * (cos_ * positive.real() + sin_ * positive.imag());
  return out;
}

SpectrumCurve correlogram(const AutocorrEstimate& est, const FrequencyGrid& grid) {
  return {grid, CorrelogramKernel(grid, est.max_lag).evaluate(est)};
}

SpectrumCurve average_correlogram(const SignalModel& model, const CoprimePair& pair, Lag snapshots,
                                  RangeKind range, const FrequencyGrid& grid,
                                  const Normalization& norm, std::uint64_t realization,
                                  Averaging averaging) {
  if (snapshots < 1) throw Error(ErrorCode::InvalidArgument, "snapshot count must be >= 1");
  const CorrelogramKernel kernel(grid, range_limit(pair, range));

  if (averaging == Averaging::Autocorrelations) {
    AutocorrEstimate mean = autocorrelation(sample_snapshot(model, pair, 0, realization), pair, range, norm);
    for (Lag k = 1; k < snapshots; ++k) {
      mean.values += autocorrelation(sample_snapshot(model, pair, k, realization), pair, range, norm).values;
    }
    mean.values /= static_cast<double>(snapshots);
    mean.snapshots_used = snapshots;
    return {grid, kernel.evaluate(mean)};
  }

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(grid.size());
  for (Lag k = 0; k < snapshots; ++k) {
    sum += kernel.evaluate(autocorrelation(sample_snapshot(model, pair, k, realization), pair, range, norm));
  }
  return {grid, sum / static_cast<double>(snapshots)};
}

std::vector<Peak> detect_peaks(const SpectrumCurve& curve, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "peak count must be >= 1");
  const Eigen::VectorXd& v = curve.values;
  const Eigen::Index size = v.size();
  std::vector<Peak> peaks;
  for (Eigen::Index i = 0; i < size; ++i) {
    const double left = v(i == 0 ? size - 1 : i - 1);
    const double right = v(i == size - 1 ? 0 : i + 1);
    if (v(i) > left && v(i) > right) peaks.push_back({curve.grid.omega(i), v(i)});
  }
  if (peaks.size() < k) {
    throw Error(ErrorCode::NotEnoughPeaks, "found " + std::to_string(peaks.size()) +
                                               " local maxima, need " + std::to_string(k));
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });
  peaks.resize(k);
  return peaks;
}

}  // namespace coprime
