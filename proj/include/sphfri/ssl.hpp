#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sphfri/sampling.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Narrowband source localization with a rigid spherical microphone array.
struct SSLConfig {
  double frequency;                 ///< Hz
  double speed_of_sound = 343.0;    ///< m/s
  double radius;                    ///< array radius, m
  double reference_distance;        ///< distance at which the kernel is computed, m
  int band = 0;                     ///< working bandwidth; 0 selects it from the kernel tail
  int spike_count = 1;              ///< number of sources

  double wavenumber() const { return kTwoPi * frequency / speed_of_sound; }
  void validate() const;
};

/// Field on the rigid sphere due to a unit monopole at distance s > r,
/// evaluated through the zonal series
///   (i kappa / 4 pi) sum_l b_l(kappa r) h1_l(kappa s) (2l+1) P_l(cos angle).
/// Coefficients are precomputed once per source distance; the series is cut
/// when terms fall below 1e-12 of the accumulated coefficient mass (hard cap
/// 2*ceil(kappa s) + 40).
class GreenEvaluator {
public:
  GreenEvaluator(const SSLConfig& cfg, double source_distance, int forced_terms = 0);

  Complex operator()(double cos_angle) const;
  int terms() const { return static_cast<int>(coeffs_.size()); }

private:
  Eigen::VectorXcd coeffs_;
};

/// Field at a microphone in the given direction on the array sphere, due to a
/// source at an arbitrary exterior location.
Complex green_function(const SphericalPoint& mic_direction, const Eigen::Vector3d& source,
                       const SSLConfig& cfg);

/// Zonal kernel coefficients hhat_l^0 for l < band of the response to a
/// source at the reference distance, by colatitude quadrature on a band-2L
/// equiangular rule. Degrees whose magnitude falls below 1e-9 of the peak
/// are reported as non-invertible.
struct KernelSpectrum {
  Eigen::VectorXcd coeffs;
  std::vector<int> weak;  ///< degrees flagged non-invertible
};
KernelSpectrum ssl_kernel_spectrum(const SSLConfig& cfg, int band);

/// Smallest band whose relative kernel tail energy drops below `tail_tol`.
int effective_bandwidth(const SSLConfig& cfg, double tail_tol = 1e-3);

/// Complex microphone pressures -> directions of arrival with effective
/// complex amplitudes (distance-dependent scaling is absorbed into the
/// amplitudes; they are not absolute source strengths).
DiracEnsemble localize_sound_sources(const SampleSet& mics, const SSLConfig& cfg,
                                     std::mt19937_64& rng);

/// Ratio curves quantifying how the kernel shape drifts with source
/// distance, against the largest distance in the list.
struct DistanceSensitivity {
  std::vector<double> distances;
  Eigen::VectorXd thetas;         ///< colatitude grid for the spatial curves
  Eigen::MatrixXd spatial_ratio;  ///< |distances| x |thetas|
  Eigen::MatrixXd spectral_ratio; ///< |distances| x band
};
DistanceSensitivity kernel_distance_sensitivity(const SSLConfig& cfg,
                                                const std::vector<double>& distances,
                                                int band, int theta_count = 181);

}  // namespace sphfri
