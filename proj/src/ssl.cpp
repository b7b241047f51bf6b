#include "sphfri/ssl.hpp"

#include <algorithm>
#include <cmath>

#include "sphfri/bessel.hpp"
#include "sphfri/dh_grid.hpp"
#include "sphfri/harmonics.hpp"
#include "sphfri/legendre.hpp"
#include "sphfri/recover.hpp"

namespace sphfri {

void SSLConfig::validate() const {
  if (!(frequency > 0.0)) throw Error("SSLConfig: frequency must be positive");
  if (!(speed_of_sound > 0.0)) throw Error("SSLConfig: speed of sound must be positive");
  if (!(radius > 0.0)) throw Error("SSLConfig: radius must be positive");
  if (!(reference_distance > radius))
    throw Error("SSLConfig: reference distance must exceed the array radius");
  if (band < 0) throw Error("SSLConfig: band must be >= 0");
  if (spike_count < 1) throw Error("SSLConfig: need at least one source");
}

GreenEvaluator::GreenEvaluator(const SSLConfig& cfg, double source_distance, int forced_terms) {
  cfg.validate();
  if (!(source_distance > cfg.radius))
    throw Error("GreenEvaluator: source at distance " + std::to_string(source_distance) +
                " lies inside the array sphere of radius " + std::to_string(cfg.radius));
  const double kappa = cfg.wavenumber();
  const double kr = kappa * cfg.radius;
  const double ks = kappa * source_distance;
  const int cap = forced_terms > 0
                      ? forced_terms
                      : 2 * static_cast<int>(std::ceil(ks)) + 40;

  const Eigen::VectorXd j_r = bessel_j_array(cap + 1, kr);
  const Eigen::VectorXd j_s = bessel_j_array(cap + 1, ks);
  const auto deriv = [](const Eigen::VectorXd& f, int l, double x) {
    return (l == 0) ? -f(1) : f(l - 1) - (l + 1.0) / x * f(l);
  };

  // Second-kind values march upward alongside the coefficient loop; once
  // either argument approaches overflow the remaining terms are identically
  // negligible (the first-kind factor has underflowed long before).
  double yr0 = -std::cos(kr) / kr, yr1 = -std::cos(kr) / (kr * kr) - std::sin(kr) / kr;
  double ys0 = -std::cos(ks) / ks, ys1 = -std::cos(ks) / (ks * ks) - std::sin(ks) / ks;

  const Complex front = Complex(0.0, kappa / (4.0 * kPi));
  std::vector<Complex> coeffs;
  double mass = 0.0;
  for (int l = 0; l < cap; ++l) {
    const double y_r = (l == 0) ? yr0 : yr1;
    const double y_s = (l == 0) ? ys0 : ys1;
    const double dyr = (l == 0) ? -yr1 : yr0 - (l + 1.0) / kr * yr1;
    const Complex h1_r(j_r(l), y_r);
    const Complex dh1_r(deriv(j_r, l, kr), dyr);
    const Complex b = j_r(l) - deriv(j_r, l, kr) / dh1_r * h1_r;
    const Complex c = front * b * Complex(j_s(l), y_s) * (2.0 * l + 1.0);
    coeffs.push_back(c);
    mass += std::abs(c);
    if (forced_terms == 0 && l > kr + 8 && std::abs(c) < 1e-12 * mass) break;

    // advance the upward recurrences to order l+1
    if (l >= 1) {
      const double yr2 = (2.0 * l + 1.0) / kr * yr1 - yr0;
      const double ys2 = (2.0 * l + 1.0) / ks * ys1 - ys0;
      if (std::abs(yr2) > 1e280 || std::abs(ys2) > 1e280) break;
      yr0 = yr1;
      yr1 = yr2;
      ys0 = ys1;
      ys1 = ys2;
    }
  }
  coeffs_ = Eigen::Map<const Eigen::VectorXcd>(coeffs.data(), coeffs.size());
}

Complex GreenEvaluator::operator()(double cos_angle) const {
  const double x = std::min(std::max(cos_angle, -1.0), 1.0);
  Complex acc(0, 0);
  double p0 = 1.0, p1 = x;
  for (int l = 0; l < coeffs_.size(); ++l) {
    double pl;
    if (l == 0)
      pl = p0;
    else if (l == 1)
      pl = p1;
    else {
      pl = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
      p0 = p1;
      p1 = pl;
    }
    acc += coeffs_(l) * pl;
  }
  return acc;
}

Complex green_function(const SphericalPoint& mic_direction, const Eigen::Vector3d& source,
                       const SSLConfig& cfg) {
  const double s = source.norm();
  const GreenEvaluator evaluator(cfg, s);
  const double cos_angle = sph_to_cart(mic_direction).dot(source) / s;
  return evaluator(cos_angle);
}

KernelSpectrum ssl_kernel_spectrum(const SSLConfig& cfg, int band) {
  cfg.validate();
  if (band < 1) throw Error("ssl_kernel_spectrum: band must be >= 1");
  const GreenEvaluator evaluator(cfg, cfg.reference_distance);
  const DHGrid rule = dh_grid(2 * band);

  KernelSpectrum out;
  out.coeffs.resize(band);
  for (int l = 0; l < band; ++l) {
    Complex acc(0, 0);
    for (int p = 0; p < rule.rings(); ++p) {
      const double theta = rule.theta(p);
      acc += rule.weight(p) * evaluator(std::cos(theta)) *
             sph_norm(l, 0) * legendre_p(l, std::cos(theta));
    }
    out.coeffs(l) = acc * (2.0 * rule.band());  // azimuthal sum of the zonal integrand
  }
  const double peak = out.coeffs.cwiseAbs().maxCoeff();
  for (int l = 0; l < band; ++l)
    if (std::abs(out.coeffs(l)) < 1e-9 * peak) out.weak.push_back(l);
  return out;
}

int effective_bandwidth(const SSLConfig& cfg, double tail_tol) {
  cfg.validate();
  const double kr = cfg.wavenumber() * cfg.radius;
  const int probe = std::max(16, static_cast<int>(std::ceil(2.0 * kr)) + 16);
  const KernelSpectrum ks = ssl_kernel_spectrum(cfg, probe);
  const double total = ks.coeffs.squaredNorm();
  double tail = total;
  for (int band = 1; band <= probe; ++band) {
    tail -= std::norm(ks.coeffs(band - 1));
    if (tail < tail_tol * total) return band;
  }
  return probe;
}

DiracEnsemble localize_sound_sources(const SampleSet& mics, const SSLConfig& cfg,
                                     std::mt19937_64& rng) {
  cfg.validate();
  const int band = cfg.band > 0 ? cfg.band : effective_bandwidth(cfg);
  const KernelSpectrum kernel = ssl_kernel_spectrum(cfg, band);
  if (!kernel.weak.empty())
    throw NonInvertibleKernel("kernel has non-invertible degrees below the working band " +
                                  std::to_string(band),
                              kernel.weak);
  return deconvolve_then_recover(mics, kernel.coeffs, band, cfg.spike_count, rng,
                                 RecoverOptions::tolerant());
}

DistanceSensitivity kernel_distance_sensitivity(const SSLConfig& cfg,
                                                const std::vector<double>& distances,
                                                int band, int theta_count) {
  cfg.validate();
  if (distances.empty()) throw Error("kernel_distance_sensitivity: no distances");
  for (const double d : distances)
    if (!(d > cfg.radius))
      throw Error("kernel_distance_sensitivity: distance inside the array sphere");
  const double reference = *std::max_element(distances.begin(), distances.end());

  DistanceSensitivity out;
  out.distances = distances;
  out.thetas.resize(theta_count);
  for (int i = 0; i < theta_count; ++i) out.thetas(i) = i * kPi / (theta_count - 1);

  const GreenEvaluator ref_eval(cfg, reference);
  SSLConfig ref_cfg = cfg;
  ref_cfg.reference_distance = reference;
  const Eigen::VectorXcd ref_spec = ssl_kernel_spectrum(ref_cfg, band).coeffs;

  out.spatial_ratio.resize(distances.size(), theta_count);
  out.spectral_ratio.resize(distances.size(), band);
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const GreenEvaluator eval(cfg, distances[i]);
    for (int t = 0; t < theta_count; ++t)
      out.spatial_ratio(i, t) =
          std::abs(eval(std::cos(out.thetas(t)))) / std::abs(ref_eval(std::cos(out.thetas(t))));
    SSLConfig di_cfg = cfg;
    di_cfg.reference_distance = distances[i];
    const Eigen::VectorXcd spec = ssl_kernel_spectrum(di_cfg, band).coeffs;
    for (int l = 0; l < band; ++l)
      out.spectral_ratio(i, l) = std::abs(spec(l)) / std::abs(ref_spec(l));
  }
  return out;
}

}  // namespace sphfri
