#include "sphfri/noise.hpp"

#include <cmath>
#include <limits>

namespace sphfri {

NoiseModel NoiseModel::from_sigma(double sigma, int samples, Kind kind) {
  if (!(sigma >= 0.0)) throw Error("NoiseModel: sigma must be >= 0");
  if (samples < 1) throw Error("NoiseModel: sample count must be >= 1");
  return NoiseModel(sigma, std::nullopt, samples, kind);
}

NoiseModel NoiseModel::from_snr_db(double snr_db, int samples, Kind kind) {
  if (std::isnan(snr_db)) throw Error("NoiseModel: snr must not be NaN");
  if (samples < 1) throw Error("NoiseModel: sample count must be >= 1");
  return NoiseModel(std::nullopt, snr_db, samples, kind);
}

bool NoiseModel::noiseless() const {
  if (sigma_) return *sigma_ == 0.0;
  return std::isinf(*snr_db_) && *snr_db_ > 0.0;
}

double NoiseModel::resolve_sigma(const SampleSet& clean) const {
  if (clean.size() != samples_)
    throw Error("NoiseModel built for " + std::to_string(samples_) + " samples, got " +
                std::to_string(clean.size()));
  if (sigma_) return *sigma_;
  if (noiseless()) return 0.0;
  const double power = clean.values.squaredNorm();
  return std::sqrt(power / (samples_ * std::pow(10.0, *snr_db_ / 10.0)));
}

SampleSet add_noise(const SampleSet& s, const NoiseModel& nm, std::mt19937_64& rng) {
  validate_samples(s);
  const double sigma = nm.resolve_sigma(s);
  SampleSet out = s;
  if (sigma == 0.0) return out;
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (nm.kind() == NoiseModel::Kind::Real) {
    for (Eigen::Index n = 0; n < out.size(); ++n) out.values(n) += sigma * gauss(rng);
  } else {
    const double component = sigma / std::sqrt(2.0);
    for (Eigen::Index n = 0; n < out.size(); ++n)
      out.values(n) += Complex(component * gauss(rng), component * gauss(rng));
  }
  return out;
}

}  // namespace sphfri
