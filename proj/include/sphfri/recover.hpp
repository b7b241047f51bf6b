#pragma once

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sphfri/annihilation.hpp"
#include "sphfri/data_matrix.hpp"
#include "sphfri/rotation.hpp"
#include "sphfri/sampling.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// Largest spike count recoverable at bandwidth L, i.e. the largest K with
/// (L - K)^2 >= K.
int max_recoverable_diracs(int band);

/// Smallest bandwidth that supports K spikes: K + ceil(sqrt(K)).
int minimal_band_for(int spike_count);

/// Amplitudes and azimuths given the colatitudes: least-squares fits of the
/// m = 0 and m = 1 columns against the Vandermonde factor, with the azimuth
/// as the phase of the element-wise ratio. Colatitudes at a pole make the
/// azimuth unobservable.
DiracEnsemble recover_azimuths_amplitudes(const DataMatrix& d,
                                          const std::vector<double>& colatitudes);

struct RecoverOptions {
  /// Newton-polish the algebraic estimate against the estimated spectrum.
  /// The annihilating-matrix nullspace is poorly conditioned at minimal
  /// bandwidth, so the raw closed-form estimate carries amplified roundoff;
  /// a few Gauss-Newton steps on the spectral misfit restore it to the
  /// precision of the spectrum itself.
  bool polish = true;
  int polish_iterations = 4;
  /// Root-sanitization gates; the strict defaults fit exact data. Noisy
  /// observations perturb roots off the real axis by the noise scale, so
  /// noise-facing callers widen these to sanity bounds.
  double root_imag_tolerance = 1e-6;
  double root_real_tolerance = 1e-6;

  /// Per-degree weights applied to the polish residual (empty = unweighted).
  /// After deconvolution the estimation error per coefficient is the
  /// observation error divided by the kernel, so weighting the fit by the
  /// forward factors restores a uniform error model.
  Eigen::VectorXcd polish_degree_weights;

  /// Band used by the annihilation algebra (0 = the full band). Steep
  /// kernels turn the top deconvolved degrees into amplified noise; running
  /// the algebraic stage on the stable subband and polishing on everything
  /// keeps the initialization inside the basin.
  int algebra_band = 0;

  /// Profile for noisy or model-mismatched observations.
  static RecoverOptions tolerant() {
    RecoverOptions o;
    o.root_imag_tolerance = 0.5;
    o.root_real_tolerance = 0.5;
    return o;
  }
};

/// Annihilation pipeline on a spectrum, with no rotation handling:
/// data matrix -> annihilating matrix -> filter -> roots -> azimuths
/// (-> polish). Throws DegenerateConfiguration when two recovered
/// colatitudes are closer than 1e-9.
DiracEnsemble recover_from_spectrum(const SpectrumTriangle& fhat, int spike_count,
                                    const RecoverOptions& options = {});

/// Hook for adjusting the spectrum between estimation and recovery
/// (deconvolution by a kernel, per-degree sharpening, ...).
using SpectrumMap = std::function<SpectrumTriangle(const SpectrumTriangle&)>;

/// Full pipeline from scattered samples: draw a random rotation, relabel the
/// sampling points by it, estimate the spectrum, apply `map`, run the
/// annihilation recovery, and rotate the results back. A degenerate draw is
/// retried once with a fresh rotation.
DiracEnsemble recover_with_spectrum_map(const SampleSet& s, int band, int spike_count,
                                        std::mt19937_64& rng, const SpectrumMap& map,
                                        const RecoverOptions& options = {});

/// recover_with_spectrum_map with the identity spectrum map.
DiracEnsemble recover_diracs(const SampleSet& s, int band, int spike_count,
                             std::mt19937_64& rng, const RecoverOptions& options = {});

/// Deconvolves by a zonal kernel before recovery (zonal kernels commute with
/// rotations, so the relabeling trick still applies).
DiracEnsemble deconvolve_then_recover(const SampleSet& s, const Eigen::VectorXcd& hhat_zonal,
                                      int band, int spike_count, std::mt19937_64& rng,
                                      const RecoverOptions& options = {});

/// Local refinement of spike parameters by derivative-free simplex descent on
/// the squared spectral misfit
///
///   J = sum_{l,m} | fhat_l^m - sum_k a_k conj(Y_l^m(theta_k, phi_k)) |^2
///
/// over the 4K real parameters (Re a, Im a, theta, phi). Never returns a
/// ensemble with larger misfit than `init`.
DiracEnsemble refine_least_squares(const SpectrumTriangle& fhat, const DiracEnsemble& init,
                                   int max_iterations = 2000, double tolerance = 1e-10);

/// The misfit minimized by refine_least_squares.
double spectral_misfit(const SpectrumTriangle& fhat, const DiracEnsemble& f);

}  // namespace sphfri
