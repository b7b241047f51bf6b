#pragma once

#include <cstdint>
#include <vector>

#include "sphfri/crlb.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Sweep configuration for the estimation-error study of the recovery
/// pipeline against the single-spike variance bound.
struct MonteCarloConfig {
  int spike_count = 1;
  int band = 2;
  std::vector<SphericalPoint> points;  ///< sampling locations (fixed across trials)
  std::vector<double> snrs_db;         ///< +inf means noiseless
  int trials = 100;
  bool refine = true;                  ///< run the simplex descent after recovery
  std::uint64_t seed = 0;
  DiracEnsemble truth;                 ///< fixed ground truth, spike_count spikes
  int jobs = 1;
};

struct MonteCarloRow {
  double snr_db;
  int trials;
  int failures;            ///< trials that threw; excluded from the means
  double mse_theta_phi;    ///< mean (d theta)^2 + (wrapped d phi)^2
  double mse_greatcircle;  ///< mean squared geodesic error
  double crlb_theta;       ///< variance bound for theta0 (0 when noiseless)
  double crlb_phi;         ///< variance bound for phi0
};

/// One row per SNR. Deterministic for a fixed seed; per-trial failures are
/// counted, never hidden. The per-trial squared errors are also returned for
/// confidence analysis.
struct MonteCarloResult {
  std::vector<MonteCarloRow> rows;
  std::vector<std::vector<double>> per_trial_theta_phi;  ///< [snr][successful trial]
};

MonteCarloResult monte_carlo_mse(const MonteCarloConfig& config);

/// Percentile bootstrap confidence interval for the mean of `samples`
/// (level in (0,1), e.g. 0.95), deterministic for a fixed seed.
std::pair<double, double> bootstrap_mean_interval(const std::vector<double>& samples,
                                                  double level, int resamples,
                                                  std::uint64_t seed);

}  // namespace sphfri
