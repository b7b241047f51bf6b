#pragma once

#include <optional>
#include <random>

#include "sphfri/sampling.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Additive i.i.d. Gaussian measurement noise, specified either by the
/// per-sample standard deviation or by an SNR target
///
///   snr_db = 10 log10( sum |f_n|^2 / (N sigma^2) ).
///
/// Real noise perturbs the real part only (the measurement model for
/// real-valued fields); complex noise splits sigma^2 evenly between
/// independent real and imaginary parts.
class NoiseModel {
public:
  enum class Kind { Real, Complex };

  static NoiseModel from_sigma(double sigma, int samples, Kind kind = Kind::Real);
  static NoiseModel from_snr_db(double snr_db, int samples, Kind kind = Kind::Real);

  int samples() const { return samples_; }
  Kind kind() const { return kind_; }
  bool noiseless() const;

  /// Per-sample standard deviation, resolving an SNR spec against the
  /// clean signal. Infinite SNR resolves to zero.
  double resolve_sigma(const SampleSet& clean) const;

private:
  NoiseModel(std::optional<double> sigma, std::optional<double> snr_db, int samples, Kind kind)
      : sigma_(sigma), snr_db_(snr_db), samples_(samples), kind_(kind) {}

  std::optional<double> sigma_;
  std::optional<double> snr_db_;
  int samples_;
  Kind kind_;
};

SampleSet add_noise(const SampleSet& s, const NoiseModel& nm, std::mt19937_64& rng);

}  // namespace sphfri
