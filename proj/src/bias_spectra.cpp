#include "coprime/bias_spectra.hpp"

#include <limits>
#include <numbers>

namespace coprime {

FrequencyGrid::FrequencyGrid(Eigen::Index size) : size_(size) {
  if (size < kMinSize) {
    throw Error(ErrorCode::OutOfRange,
                "frequency grid needs at least " + std::to_string(kMinSize) + " points");
  }
  if (size % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "frequency grid size must be even to contain omega = 0");
  }
  omegas_ = Eigen::VectorXd::NullaryExpr(size, [this](Eigen::Index k) { return omega(k); });
}

SpectrumCurve dtft_of_window(const Eigen::VectorXd& window, const FrequencyGrid& grid) {
  if (window.size() % 2 != 1) {
    throw Error(ErrorCode::InvalidArgument, "lag window must have odd length 2L+1");
  }
  const Eigen::Index max_lag = window.size() / 2;
  const double scale = 1.0 + window.cwiseAbs().maxCoeff();
  for (Eigen::Index l = 1; l <= max_lag; ++l) {
    if (std::abs(window(max_lag + l) - window(max_lag - l)) > 1e-12 * scale) {
      throw Error(ErrorCode::InvalidArgument,
                  "lag window is not symmetric at lag " + std::to_string(l));
    }
  }
  return {grid, dtft_symmetric(window, grid.omegas()).matrix()};
}

SpectrumCurve dtft_of_window(const WeightFunction& weights, const FrequencyGrid& grid) {
  return dtft_of_window(weights.as_real(), grid);
}

SpectrumCurve dtft_of_window(const UnbiasedWindow& window, const FrequencyGrid& grid) {
  return dtft_of_window(Eigen::VectorXd(window.indicator.cast<double>()), grid);
}

namespace {

// Curves are evaluated in extended precision: sin(qx)/sin(x) amplifies the
// rounding of omega near its removable singularities.
using Wide = long double;

Wide wide_omega(const FrequencyGrid& grid, Eigen::Index k) {
  constexpr Wide pi = std::numbers::pi_v<Wide>;
  return -pi + Wide(2) * pi * static_cast<Wide>(k) / static_cast<Wide>(grid.size());
}

}  // namespace

SpectrumCurve bias_unbiased(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid) {
  return {grid, Eigen::VectorXd::NullaryExpr(grid.size(), [&](Eigen::Index k) {
            return static_cast<double>(bias_unbiased_at(pair, range, wide_omega(grid, k)));
          })};
}

SpectrumCurve bias_biased(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                          double s_b) {
  if (!(s_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "s_b must be positive");
  return {grid, Eigen::VectorXd::NullaryExpr(grid.size(), [&](Eigen::Index k) {
            return static_cast<double>(bias_biased_at(pair, range, wide_omega(grid, k), Wide(s_b)));
          })};
}

BiasTermCurves biased_term_curves(const CoprimePair& pair, RangeKind range,
                                  const FrequencyGrid& grid) {
  const Eigen::Index k = grid.size();
  BiasTermCurves out{{grid, Eigen::VectorXd(k)}, {grid, Eigen::VectorXd(k)},
                     {grid, Eigen::VectorXd(k)}, {grid, Eigen::VectorXd(k)},
                     {grid, Eigen::VectorXd(k)}};
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto t = biased_terms_at(pair, range, wide_omega(grid, i));
    out.a.values(i) = static_cast<double>(t.a);
    out.b.values(i) = static_cast<double>(t.b);
    out.c.values(i) = static_cast<double>(t.c);
    out.d.values(i) = static_cast<double>(t.d);
    out.total.values(i) = static_cast<double>(t.total());
  }
  return out;
}

Count full_peak_formula(Lag M, Lag N) noexcept { return (2 * M + N - 1) * (2 * M + N - 1); }

Count continuous_peak_formula(Lag M, Lag N) noexcept {
  const Count f = (M - 1) / N;
  Count sum = 0;
  for (Lag i = 1; i <= N - 1; ++i) sum += 2 * ((M + M * i - 1) / N);
  return (M + f + 1) * (M + f + 1) + (M + N) * (M + N) + M * M - 3 * M - 3 * f - 2 * f * f - 2 +
         sum;
}

Count prototype_peak_formula(Lag M, Lag N) noexcept {
  Count sum = 0;
  for (Lag i = 1; i <= N - 1; ++i) sum += 2 * ((M * i - 1) / N);
  return 3 * M * M + N * N - 3 * M + 2 * M * N - 1 + sum;
}

Count main_peak(const CoprimePair& pair, RangeKind range) noexcept {
  switch (range) {
    case RangeKind::Full: return full_peak_formula(pair.M(), pair.N());
    case RangeKind::Continuous: return continuous_peak_formula(pair.M(), pair.N());
    case RangeKind::Prototype: return prototype_peak_formula(pair.M(), pair.N());
  }
  return 0;
}

SideLobe side_lobe_peak(const SpectrumCurve& curve) {
  const Eigen::VectorXd& v = curve.values;
  const Eigen::Index k = v.size();
  const Eigen::Index zero = curve.grid.zero_index();

  Eigen::Index edge = zero;
  while (edge > 0 && v(edge - 1) < v(edge)) --edge;

  Eigen::Index best = -1;
  for (Eigen::Index j = 0; j < edge; ++j) {
    const double left = v(j == 0 ? k - 1 : j - 1);
    const double right = v(j + 1);
    if (v(j) > left && v(j) > right && (best < 0 || v(j) > v(best))) best = j;
  }
  if (best < 0) throw Error(ErrorCode::NoSideLobe, "no local maximum outside the main lobe");
  return {curve.grid.omega(best), v(best)};
}

PeakReport relative_amplitude(const CoprimePair& pair, RangeKind range, const FrequencyGrid& grid,
                              double s_b) {
  const double main = static_cast<double>(main_peak(pair, range)) / s_b;
  const SideLobe side = side_lobe_peak(bias_biased(pair, range, grid, s_b));
  return {main, side.value, side.omega, (main - side.value) / main};
}

}  // namespace coprime
