#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sphfri/dh_grid.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Largest number of corrupted grid samples that can be located and removed
/// when a band-L signal is sampled on a band-L' equiangular grid: the largest
/// K with (L'-L-K)(L'-L-K+1) >= K.
int max_correctable_corruptions(int band, int grid_band);

/// One corrupted node and its additive corruption value.
struct Corruption {
  int p;
  int q;
  Complex value;
};

/// Locates exactly `corruption_count` corrupted nodes from grid samples of a
/// band-limited signal (band < grid band). Uses only the spectral degrees at
/// and above the signal band, which the clean signal cannot reach. Requires
/// corruptions off the p = 0 pole ring and on pairwise distinct rings;
/// annihilation or fit residuals above 1e-6 signal a count mismatch or a
/// degenerate configuration.
std::vector<Corruption> detect_shot_noise(const DHGrid& grid, const Eigen::VectorXcd& values,
                                          int band, int corruption_count);

struct ShotNoiseRepair {
  std::vector<Corruption> corruptions;
  Eigen::VectorXcd corrected;  ///< node values with corruptions subtracted
  SpectrumTriangle spectrum;   ///< band-limited spectrum of the corrected samples
};

/// Detects, subtracts, and re-transforms. The corrected samples must leave
/// only roundoff above the signal band.
ShotNoiseRepair remove_shot_noise(const DHGrid& grid, const Eigen::VectorXcd& values, int band,
                                  int corruption_count);

/// Alternative repair: drop the given nodes entirely and re-fit the band-L
/// spectrum to the remaining ones by least squares.
SpectrumTriangle spectrum_ignoring_nodes(const DHGrid& grid, const Eigen::VectorXcd& values,
                                         int band,
                                         const std::vector<std::pair<int, int>>& skip);

}  // namespace sphfri
