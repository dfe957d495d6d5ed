#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "coprime/core_sets.hpp"

namespace coprime {

/// K uniformly spaced angular frequencies -pi + 2*pi*k/K, k in [0, K).
/// K must be even and at least 1024, so omega = 0 sits exactly at k = K/2.
class FrequencyGrid {
 public:
  static constexpr Eigen::Index kMinSize = 1024;

  explicit FrequencyGrid(Eigen::Index size);

  Eigen::Index size() const noexcept { return size_; }
  Eigen::Index zero_index() const noexcept { return size_ / 2; }
  double bin_width() const noexcept { return 2.0 * std::numbers::pi / static_cast<double>(size_); }
  double omega(Eigen::Index k) const noexcept {
    return -std::numbers::pi + bin_width() * static_cast<double>(k);
  }
  const Eigen::VectorXd& omegas() const noexcept { return omegas_; }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.size_ == b.size_;
  }

 private:
  Eigen::Index size_;
  Eigen::VectorXd omegas_;
};

struct SpectrumCurve {
  FrequencyGrid grid;
  Eigen::VectorXd values;

  Eigen::Index size() const noexcept { return values.size(); }
};

/// Sum_l w(l) exp(-i omega l) for a window on [-max_lag, max_lag] stored
/// densely (entry i is lag i - max_lag). The window must be symmetric; the
/// result is then real and is accumulated as w(0) + sum_{l>0} 2 w(l) cos(omega l),
/// lag by lag for every omega independently.
template <typename Derived, typename OmegaDerived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> dtft_symmetric(
    const Eigen::DenseBase<Derived>& window, const Eigen::DenseBase<OmegaDerived>& omega) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index max_lag = (window.size() - 1) / 2;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Array<Scalar, Eigen::Dynamic, 1>::Constant(omega.size(), window(max_lag));
  for (Eigen::Index l = 1; l <= max_lag; ++l) {
    const Scalar weight = window(max_lag + l) + window(max_lag - l);
    if (weight == Scalar(0)) continue;
    out += weight * (omega.derived().array().template cast<Scalar>() * Scalar(l)).cos();
  }
  return out;
}

/// Throws InvalidArgument when the window is not symmetric within 1e-12
/// (its transform would have an imaginary part).
SpectrumCurve dtft_of_window(const Eigen::VectorXd& window, const FrequencyGrid& grid);

}  // namespace coprime
