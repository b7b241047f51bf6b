#pragma once

#include <random>

#include <Eigen/Dense>

#include "sphfri/sampling.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Isotropic diffusion on the sphere observed at a single time t0 after an
/// impulsive release: each spectral degree decays by exp(-l(l+1) k t0).
struct DiffusionConfig {
  double k;         ///< diffusion constant, 1/time; > 0
  double t0;        ///< observation time; > 0
  int band;         ///< cutoff bandwidth of the working model
  int spike_count;  ///< number of sources

  void validate() const;
};

/// Per-degree kernel attenuation exp(-l(l+1) k t0) for l < band.
Eigen::VectorXd diffusion_kernel_spectrum(const DiffusionConfig& cfg);

/// Forward model: multiply each (l, m) coefficient by the degree-l attenuation.
SpectrumTriangle diffusion_attenuate(const SpectrumTriangle& initial, const DiffusionConfig& cfg);

/// Inverse model: divide by the attenuation. Degrees whose attenuation has
/// decayed below `floor` make the inversion ill-conditioned and are reported.
SpectrumTriangle diffusion_sharpen(const SpectrumTriangle& observed, const DiffusionConfig& cfg,
                                   double floor = 1e-12);

/// Fraction of the kernel's weighted spectral energy above the cutoff:
///   eps(L) = sum_{l >= L} w_l / sum_{l >= 0} w_l,  w_l = |v_l|^2 / (2l+1)
/// with v_l = exp(-l(l+1) k t0); the tail is truncated once terms drop
/// below 1e-30.
double aliasing_energy(double k, double t0, int band);

/// Scattered samples of the diffused field -> source locations and strengths:
/// spectrum estimation, per-degree sharpening, then the spike recovery
/// pipeline.
DiracEnsemble localize_diffusion_sources(const SampleSet& s, const DiffusionConfig& cfg,
                                         std::mt19937_64& rng);

}  // namespace sphfri
