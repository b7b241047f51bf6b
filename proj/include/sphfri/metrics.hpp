#pragma once

#include <vector>

#include "sphfri/types.hpp"

namespace sphfri {

/// Scores of an estimated spike set against the truth after minimum-cost
/// assignment under great-circle distance.
struct MatchMetrics {
  std::vector<int> assignment;    ///< estimated index matched to each truth index
  double mse_greatcircle;         ///< mean squared geodesic location error
  double mse_theta_phi;           ///< mean of (d theta)^2 + (wrapped d phi)^2
  double mse_amplitude;           ///< mean squared amplitude error
  double max_greatcircle;         ///< largest geodesic error over spikes
  double max_relative_amplitude;  ///< largest |da| / |a| over spikes
};

/// Requires equal spike counts. Exhaustive assignment up to K = 6, a
/// Hungarian-style solver beyond.
MatchMetrics match_and_mse(const DiracEnsemble& truth, const DiracEnsemble& est);

}  // namespace sphfri
