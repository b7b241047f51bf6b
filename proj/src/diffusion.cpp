#include "sphfri/diffusion.hpp"

#include <cmath>

#include "sphfri/recover.hpp"

namespace sphfri {

void DiffusionConfig::validate() const {
  if (!(k > 0.0)) throw Error("DiffusionConfig: diffusion constant must be positive");
  if (!(t0 > 0.0)) throw Error("DiffusionConfig: observation time must be positive");
  if (band < 1) throw Error("DiffusionConfig: band must be >= 1");
  if (spike_count < 1) throw Error("DiffusionConfig: need at least one source");
}

Eigen::VectorXd diffusion_kernel_spectrum(const DiffusionConfig& cfg) {
  cfg.validate();
  Eigen::VectorXd h(cfg.band);
  for (int l = 0; l < cfg.band; ++l) h(l) = std::exp(-l * (l + 1.0) * cfg.k * cfg.t0);
  return h;
}

SpectrumTriangle diffusion_attenuate(const SpectrumTriangle& initial,
                                     const DiffusionConfig& cfg) {
  cfg.validate();
  SpectrumTriangle out(initial.band());
  for (int l = 0; l < initial.band(); ++l) {
    const double a = std::exp(-l * (l + 1.0) * cfg.k * cfg.t0);
    for (int m = -l; m <= l; ++m) out(l, m) = a * initial(l, m);
  }
  return out;
}

SpectrumTriangle diffusion_sharpen(const SpectrumTriangle& observed, const DiffusionConfig& cfg,
                                   double floor) {
  cfg.validate();
  std::vector<int> dead;
  for (int l = 0; l < observed.band(); ++l)
    if (std::exp(-l * (l + 1.0) * cfg.k * cfg.t0) < floor) dead.push_back(l);
  if (!dead.empty())
    throw NonInvertibleKernel(
        "diffusion attenuation underflows at degree " + std::to_string(dead.front()) +
            " and above; deconvolution is ill-conditioned at this band",
        dead);
  SpectrumTriangle out(observed.band());
  for (int l = 0; l < observed.band(); ++l) {
    const double a = std::exp(-l * (l + 1.0) * cfg.k * cfg.t0);
    for (int m = -l; m <= l; ++m) out(l, m) = observed(l, m) / a;
  }
  return out;
}

double aliasing_energy(double k, double t0, int band) {
  if (!(k > 0.0) || !(t0 > 0.0)) throw Error("aliasing_energy: k and t0 must be positive");
  if (band < 1) throw Error("aliasing_energy: band must be >= 1");
  double total = 0.0, tail = 0.0;
  for (int l = 0;; ++l) {
    const double v = std::exp(-l * (l + 1.0) * k * t0);
    const double w = v * v / (2.0 * l + 1.0);
    total += w;
    if (l >= band) tail += w;
    if (w < 1e-30 && l >= band) break;
  }
  return tail / total;
}

DiracEnsemble localize_diffusion_sources(const SampleSet& s, const DiffusionConfig& cfg,
                                         std::mt19937_64& rng) {
  cfg.validate();
  RecoverOptions options = RecoverOptions::tolerant();
  options.polish_degree_weights = diffusion_kernel_spectrum(cfg).cast<Complex>();
  // Degrees attenuated below ~5% emerge from the inversion noise-dominated;
  // keep them out of the algebraic initialization.
  options.algebra_band = cfg.band;
  while (options.algebra_band > minimal_band_for(cfg.spike_count) &&
         std::exp(-(options.algebra_band - 1.0) * options.algebra_band * cfg.k * cfg.t0) < 0.05)
    --options.algebra_band;
  return recover_with_spectrum_map(
      s, cfg.band, cfg.spike_count, rng,
      [&cfg](const SpectrumTriangle& observed) { return diffusion_sharpen(observed, cfg); },
      options);
}

}  // namespace sphfri
