#include "sphfri/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "sphfri/harmonics.hpp"
#include "sphfri/metrics.hpp"
#include "sphfri/noise.hpp"
#include "sphfri/parallel.hpp"
#include "sphfri/recover.hpp"
#include "sphfri/sampling.hpp"

namespace sphfri {

MonteCarloResult monte_carlo_mse(const MonteCarloConfig& config) {
  if (config.trials < 1) throw Error("monte_carlo_mse: need at least one trial");
  if (config.truth.size() != config.spike_count)
    throw Error("monte_carlo_mse: truth ensemble size does not match spike count");
  if (static_cast<Eigen::Index>(config.points.size()) <
      static_cast<Eigen::Index>(config.band) * config.band)
    throw Error("monte_carlo_mse: fewer sampling points than spectral coefficients");

  const SampleSet clean = synthesize_samples(dirac_spectrum(config.truth, config.band),
                                             config.points);

  MonteCarloResult result;
  for (std::size_t si = 0; si < config.snrs_db.size(); ++si) {
    const double snr_db = config.snrs_db[si];
    const NoiseModel nm = NoiseModel::from_snr_db(snr_db, static_cast<int>(clean.size()));
    const double sigma = nm.resolve_sigma(clean);

    struct TrialOutcome {
      bool ok = false;
      double theta_phi = 0.0;
      double greatcircle = 0.0;
    };
    std::vector<TrialOutcome> outcomes(config.trials);

    parallel_for(config.trials, config.jobs, [&](int t) {
      auto rng = trial_rng(config.seed, si * static_cast<std::uint64_t>(config.trials) + t);
      try {
        const SampleSet noisy = add_noise(clean, nm, rng);
        RecoverOptions raw = RecoverOptions::tolerant();
        raw.polish = false;  // the descent stage owns all post-processing here
        DiracEnsemble est = recover_diracs(noisy, config.band, config.spike_count, rng, raw);
        if (config.refine) {
          const SpectrumTriangle measured = spectrum_from_samples(noisy, config.band);
          est = refine_least_squares(measured, est);
        }
        const MatchMetrics mm = match_and_mse(config.truth, est);
        outcomes[t] = {true, mm.mse_theta_phi, mm.mse_greatcircle};
      } catch (const Error&) {
        outcomes[t] = {};
      }
    });

    MonteCarloRow row{};
    row.snr_db = snr_db;
    row.trials = config.trials;
    std::vector<double> per_trial;
    double sum_tp = 0.0, sum_gc = 0.0;
    for (const auto& o : outcomes) {
      if (!o.ok) {
        ++row.failures;
        continue;
      }
      per_trial.push_back(o.theta_phi);
      sum_tp += o.theta_phi;
      sum_gc += o.greatcircle;
    }
    const int ok = config.trials - row.failures;
    row.mse_theta_phi = ok > 0 ? sum_tp / ok : 0.0;
    row.mse_greatcircle = ok > 0 ? sum_gc / ok : 0.0;

    if (sigma > 0.0 && config.spike_count == 1) {
      const auto& spike = config.truth.spikes[0];
      const ParamVector z{spike.amplitude.real(), spike.location.theta, spike.location.phi};
      const Eigen::Vector3d bounds = crlb(z, config.points, sigma, config.band);
      row.crlb_theta = bounds(1);
      row.crlb_phi = bounds(2);
    }
    result.rows.push_back(row);
    result.per_trial_theta_phi.push_back(std::move(per_trial));
  }
  return result;
}

std::pair<double, double> bootstrap_mean_interval(const std::vector<double>& samples,
                                                  double level, int resamples,
                                                  std::uint64_t seed) {
  if (samples.empty()) throw Error("bootstrap_mean_interval: no samples");
  std::vector<double> means(resamples);
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  for (int b = 0; b < resamples; ++b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) acc += samples[pick(rng)];
    means[b] = acc / samples.size();
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  const auto at = [&](double q) {
    const int idx = std::min<int>(resamples - 1, std::max(0, static_cast<int>(q * resamples)));
    return means[idx];
  };
  return {at(tail), at(1.0 - tail)};
}

}  // namespace sphfri
