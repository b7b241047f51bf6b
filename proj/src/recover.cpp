#include "sphfri/recover.hpp"

#include <cmath>

#include "sphfri/harmonics.hpp"

namespace sphfri {

int max_recoverable_diracs(int band) {
  if (band < 2) throw Error("max_recoverable_diracs: band must be >= 2");
  int k = static_cast<int>(std::floor(band - std::sqrt(band + 0.25) + 0.5));
  while (k + 1 <= band && static_cast<long>(band - (k + 1)) * (band - (k + 1)) >= k + 1) ++k;
  while (k > 0 && (band <= k || static_cast<long>(band - k) * (band - k) < k)) --k;
  return k;
}

int minimal_band_for(int spike_count) {
  if (spike_count < 1) throw Error("minimal_band_for: need at least one spike");
  int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spike_count))));
  while (root * root < spike_count) ++root;
  while ((root - 1) * (root - 1) >= spike_count) --root;
  return spike_count + root;
}

DiracEnsemble recover_azimuths_amplitudes(const DataMatrix& d,
                                          const std::vector<double>& colatitudes) {
  const int band = d.band();
  const int k = static_cast<int>(colatitudes.size());
  if (k < 1) throw Error("recover_azimuths_amplitudes: no colatitudes given");
  for (const double theta : colatitudes)
    if (std::sin(theta) < 1e-9)
      throw UnrecoverableAzimuth("colatitude " + std::to_string(theta) +
                                 " sits on a pole; its azimuth is unobservable");

  Eigen::MatrixXcd vandermonde(band, k);
  for (int j = 0; j < k; ++j) {
    const double x = std::cos(colatitudes[j]);
    double xp = 1.0;
    for (int p = 0; p < band; ++p, xp *= x) vandermonde(p, j) = xp;
  }

  const Eigen::VectorXcd d0 = d.known_column(0);
  const Eigen::VectorXcd d1 = d.known_column(1);
  const Eigen::VectorXcd v0 =
      vandermonde.topRows(d0.size()).colPivHouseholderQr().solve(d0);
  const Eigen::VectorXcd v1 =
      vandermonde.topRows(d1.size()).colPivHouseholderQr().solve(d1);

  DiracEnsemble f;
  for (int j = 0; j < k; ++j) {
    const double phi = wrap_azimuth(std::arg(v0(j) / v1(j)));
    f.spikes.push_back({v0(j), SphericalPoint(colatitudes[j], phi)});
  }
  return f;
}

namespace {

// Gauss-Newton steps on the (optionally degree-weighted) spectral misfit,
// from an estimate close to the optimum. Skipped near the poles where the
// colatitude gradient diverges.
DiracEnsemble polish_against_spectrum(const SpectrumTriangle& fhat, DiracEnsemble est,
                                      int max_iterations,
                                      const Eigen::VectorXcd& degree_weights) {
  const int band = fhat.band();
  const int k = est.size();
  for (const auto& s : est.spikes)
    if (std::sin(s.location.theta) < 1e-6) return est;

  Eigen::VectorXcd w = Eigen::VectorXcd::Ones(fhat.coeffs().size());
  if (degree_weights.size() > 0) {
    if (degree_weights.size() < band) throw Error("polish weights shorter than the band");
    for (int l = 0; l < band; ++l)
      for (int m = -l; m <= l; ++m) w(SpectrumTriangle::index(l, m)) = degree_weights(l);
  }

  const auto residual = [&fhat, &w, band](const DiracEnsemble& f) {
    Eigen::VectorXcd r = fhat.coeffs();
    for (const auto& s : f.spikes)
      r -= s.amplitude * harmonics_at(s.location, band).conjugate();
    return (w.array() * r.array()).matrix().eval();
  };

  Eigen::VectorXcd r = residual(est);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < max_iterations && cost > 1e-28; ++iter) {
    Eigen::MatrixXcd jac(r.size(), 4 * k);
    for (int j = 0; j < k; ++j) {
      const auto& s = est.spikes[j];
      const Eigen::VectorXcd conj_y =
          (w.array() * harmonics_at(s.location, band).conjugate().array()).matrix();
      const Eigen::VectorXcd dtheta =
          (w.array() * conj_harmonics_theta_grad(s.location, band).array()).matrix();
      jac.col(4 * j) = -conj_y;
      jac.col(4 * j + 1) = -Complex(0, 1) * conj_y;
      jac.col(4 * j + 2) = -s.amplitude * dtheta;
      Eigen::VectorXcd dphi(conj_y.size());
      for (int l = 0; l < band; ++l)
        for (int m = -l; m <= l; ++m)
          dphi(SpectrumTriangle::index(l, m)) =
              Complex(0, -m) * conj_y(SpectrumTriangle::index(l, m));
      jac.col(4 * j + 3) = -s.amplitude * dphi;
    }
    const Eigen::MatrixXd normal = (jac.adjoint() * jac).real();
    const Eigen::VectorXd rhs = -(jac.adjoint() * r).real();
    const Eigen::VectorXd step = normal.ldlt().solve(rhs);

    bool accepted = false;
    for (double t : {1.0, 0.5, 0.25, 0.125}) {
      DiracEnsemble candidate = est;
      bool valid = true;
      for (int j = 0; j < k; ++j) {
        candidate.spikes[j].amplitude +=
            t * Complex(step(4 * j), step(4 * j + 1));
        const auto loc = canonical_direction(
            est.spikes[j].location.theta + t * step(4 * j + 2),
            est.spikes[j].location.phi + t * step(4 * j + 3));
        if (std::sin(loc.theta) < 1e-6) valid = false;
        candidate.spikes[j].location = loc;
      }
      if (!valid) continue;
      const Eigen::VectorXcd rc = residual(candidate);
      if (rc.squaredNorm() < cost) {
        est = std::move(candidate);
        r = rc;
        cost = r.squaredNorm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return est;
}

}  // namespace

DiracEnsemble recover_from_spectrum(const SpectrumTriangle& fhat, int spike_count,
                                    const RecoverOptions& options) {
  int algebra_band = options.algebra_band > 0 ? options.algebra_band : fhat.band();
  if (algebra_band > fhat.band())
    throw Error("recover: algebra band exceeds the spectrum band");
  algebra_band = std::max(algebra_band, minimal_band_for(spike_count));
  const DataMatrix d = spectrum_to_data_matrix(
      algebra_band == fhat.band() ? fhat : truncate_spectrum(fhat, algebra_band));
  const Eigen::MatrixXcd z = build_annihilating_matrix(d, spike_count);
  const AnnihilatingFilter h = solve_annihilating_filter(z);
  const std::vector<double> colatitudes = filter_roots_to_colatitudes(
      h, options.root_imag_tolerance, options.root_real_tolerance);
  for (std::size_t i = 1; i < colatitudes.size(); ++i)
    if (colatitudes[i] - colatitudes[i - 1] < 1e-9)
      throw DegenerateConfiguration("two recovered colatitudes coincide");
  DiracEnsemble est = recover_azimuths_amplitudes(d, colatitudes);
  if (options.polish)
    est = polish_against_spectrum(fhat, est, options.polish_iterations,
                                  options.polish_degree_weights);
  return est;
}

DiracEnsemble recover_with_spectrum_map(const SampleSet& s, int band, int spike_count,
                                        std::mt19937_64& rng, const SpectrumMap& map,
                                        const RecoverOptions& options) {
  validate_samples(s);
  if (spike_count < 1) throw Error("recover: spike count must be >= 1");
  const int capacity = max_recoverable_diracs(band);
  if (spike_count > capacity)
    throw BandwidthTooSmall("cannot recover " + std::to_string(spike_count) +
                                " spikes at band " + std::to_string(band) + " (capacity " +
                                std::to_string(capacity) + "); need band >= " +
                                std::to_string(minimal_band_for(spike_count)),
                            minimal_band_for(spike_count));

  for (int attempt = 0;; ++attempt) {
    const EulerRotation rot = random_rotation(rng);
    // Relabeling: the value observed at psi is the value of the rotated
    // signal at rot(psi), so the signal itself is never resampled.
    SampleSet relabeled;
    relabeled.values = s.values;
    relabeled.points.reserve(s.points.size());
    for (const auto& p : s.points) relabeled.points.push_back(rotate_point(rot, p));

    try {
      const SpectrumTriangle fhat = map(spectrum_from_samples(relabeled, band));
      DiracEnsemble rotated = recover_from_spectrum(fhat, spike_count, options);
      const EulerRotation back = inverse(rot);
      for (auto& spike : rotated.spikes) spike.location = rotate_point(back, spike.location);
      return rotated;
    } catch (const DegenerateConfiguration&) {
      if (attempt >= 1) throw;
    } catch (const UnreliableRoots&) {
      if (attempt >= 1) throw;
    }
  }
}

DiracEnsemble recover_diracs(const SampleSet& s, int band, int spike_count,
                             std::mt19937_64& rng, const RecoverOptions& options) {
  return recover_with_spectrum_map(
      s, band, spike_count, rng, [](const SpectrumTriangle& fhat) { return fhat; }, options);
}

DiracEnsemble deconvolve_then_recover(const SampleSet& s, const Eigen::VectorXcd& hhat_zonal,
                                      int band, int spike_count, std::mt19937_64& rng,
                                      const RecoverOptions& options) {
  RecoverOptions weighted = options;
  if (weighted.polish && weighted.polish_degree_weights.size() == 0) {
    // polish in the observation domain, where the error model is uniform
    weighted.polish_degree_weights.resize(band);
    for (int l = 0; l < band; ++l)
      weighted.polish_degree_weights(l) =
          std::sqrt(4.0 * kPi / (2.0 * l + 1.0)) * hhat_zonal(l);
  }
  return recover_with_spectrum_map(
      s, band, spike_count, rng,
      [&hhat_zonal](const SpectrumTriangle& yhat) {
        return deconvolve_spectra(yhat, hhat_zonal);
      },
      weighted);
}

double spectral_misfit(const SpectrumTriangle& fhat, const DiracEnsemble& f) {
  Eigen::VectorXcd model = Eigen::VectorXcd::Zero(fhat.coeffs().size());
  for (const auto& spike : f.spikes)
    model += spike.amplitude * harmonics_at(spike.location, fhat.band()).conjugate();
  return (fhat.coeffs() - model).squaredNorm();
}

namespace {

DiracEnsemble unpack(const Eigen::VectorXd& params) {
  DiracEnsemble f;
  for (Eigen::Index k = 0; k + 3 < params.size(); k += 4)
    f.spikes.push_back({Complex(params(k), params(k + 1)),
                        canonical_direction(params(k + 2), params(k + 3))});
  return f;
}

}  // namespace

DiracEnsemble refine_least_squares(const SpectrumTriangle& fhat, const DiracEnsemble& init,
                                   int max_iterations, double tolerance) {
  const int k = init.size();
  if (k < 1) throw Error("refine_least_squares: empty initial ensemble");
  const int n = 4 * k;

  Eigen::VectorXd x0(n);
  for (int j = 0; j < k; ++j) {
    x0(4 * j) = init.spikes[j].amplitude.real();
    x0(4 * j + 1) = init.spikes[j].amplitude.imag();
    x0(4 * j + 2) = init.spikes[j].location.theta;
    x0(4 * j + 3) = init.spikes[j].location.phi;
  }

  const auto objective = [&fhat](const Eigen::VectorXd& params) {
    return spectral_misfit(fhat, unpack(params));
  };

  // Nelder-Mead with the fminsearch-style initial simplex (5% per coordinate,
  // 0.00025 for zero coordinates).
  std::vector<Eigen::VectorXd> simplex(n + 1, x0);
  std::vector<double> value(n + 1);
  for (int i = 0; i < n; ++i) {
    double& coord = simplex[i + 1](i);
    coord = (coord != 0.0) ? 1.05 * coord : 0.00025;
  }
  for (int i = 0; i <= n; ++i) value[i] = objective(simplex[i]);

  const double initial = value[0];
  std::vector<int> order(n + 1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    if (value[worst] - value[best] <= tolerance * (std::abs(value[best]) + 1e-300)) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double fr = objective(reflected);
    if (fr < value[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = objective(expanded);
      simplex[worst] = (fe < fr) ? expanded : reflected;
      value[worst] = std::min(fe, fr);
    } else if (fr < value[second]) {
      simplex[worst] = reflected;
      value[worst] = fr;
    } else {
      const bool outside = fr < value[worst];
      Eigen::VectorXd contracted;
      if (outside)
        contracted = centroid + 0.5 * (reflected - centroid);
      else
        contracted = centroid - 0.5 * (centroid - simplex[worst]);
      const double fc = objective(contracted);
      if (fc < std::min(fr, value[worst])) {
        simplex[worst] = contracted;
        value[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          value[i] = objective(simplex[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (value[i] < value[best]) best = i;
  if (value[best] > initial) return init;  // descent failed; keep the input
  return unpack(simplex[best]);
}

}  // namespace sphfri
