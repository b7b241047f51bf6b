#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

#include "sphfri/crlb.hpp"
#include "sphfri/harmonics.hpp"
#include "sphfri/metrics.hpp"
#include "sphfri/monte_carlo.hpp"
#include "sphfri/noise.hpp"
#include "sphfri/parallel.hpp"
#include "sphfri/sampling.hpp"

using namespace sphfri;

namespace {

ParamVector random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return {0.5 + unit(rng), 0.3 + 2.5 * unit(rng), kTwoPi * unit(rng)};
}

// Finite-difference oracle for the model gradient.
ModelGradient fd_derivatives(const ParamVector& z, const SphericalPoint& point, int band,
                             double h = 1e-6) {
  const auto at = [&](double a, double t, double p) {
    return model_value({a, t, p}, point, band);
  };
  return {(at(z.alpha0 + h, z.theta0, z.phi0) - at(z.alpha0 - h, z.theta0, z.phi0)) / (2 * h),
          (at(z.alpha0, z.theta0 + h, z.phi0) - at(z.alpha0, z.theta0 - h, z.phi0)) / (2 * h),
          (at(z.alpha0, z.theta0, z.phi0 + h) - at(z.alpha0, z.theta0, z.phi0 - h)) / (2 * h)};
}

}  // namespace

TEST_CASE("six-node band-2 grid") {
  const auto grid = mw_grid_L2();
  REQUIRE(grid.size() == 6);
  CHECK(grid[0].theta == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(grid[0].phi == 0.0);
  CHECK(grid[3].theta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(grid[3].phi == doctest::Approx(2 * kPi / 3).epsilon(1e-15));
}

TEST_CASE("single-spike model derivatives") {
  std::mt19937_64 rng(61);

  SUBCASE("amplitude derivative at the spike location is the energy sum") {
    const ParamVector z{1.3, 1.1, 2.2};
    const auto g = model_derivatives(z, {z.theta0, z.phi0}, 2);
    double expected = 0.0;
    const auto y = harmonics_at({z.theta0, z.phi0}, 2);
    for (int i = 0; i < y.size(); ++i) expected += std::norm(y(i));
    CHECK(std::abs(g.dalpha - Complex(expected, 0.0)) < 1e-12);
  }

  SUBCASE("azimuth derivative vanishes when only m = 0 content exists") {
    const ParamVector z{0.8, 1.4, 0.9};
    const auto g = model_derivatives(z, testsup::random_point(rng), 1);
    CHECK(std::abs(g.dphi) == 0.0);
  }

  SUBCASE("analytic gradients match central differences") {
    for (int band : {2, 3, 4}) {
      for (int i = 0; i < 100; ++i) {
        const ParamVector z = random_params(rng);
        const auto point = testsup::random_point(rng);
        const auto a = model_derivatives(z, point, band);
        const auto f = fd_derivatives(z, point, band);
        CHECK(std::abs(a.dalpha - f.dalpha) < 1e-5 * (std::abs(f.dalpha) + 1e-6));
        CHECK(std::abs(a.dtheta - f.dtheta) < 1e-5 * (std::abs(f.dtheta) + 1e-6));
        CHECK(std::abs(a.dphi - f.dphi) < 1e-5 * (std::abs(f.dphi) + 1e-6));
      }
    }
  }

  SUBCASE("poles are rejected") {
    CHECK_THROWS_AS(model_derivatives({1.0, 0.0, 0.0}, SphericalPoint(1.0, 1.0), 2), Error);
  }
}

TEST_CASE("Fisher information") {
  const auto points = mw_grid_L2();
  const ParamVector z{1.0, kPi / 2, 1.0};

  SUBCASE("scales as 1/sigma^2") {
    const Eigen::Matrix3d i1 = fisher_information(z, points, 1.0, 2);
    const Eigen::Matrix3d i2 = fisher_information(z, points, 0.5, 2);
    CHECK((i2 - 4.0 * i1).norm() < 1e-12 * i2.norm());
  }

  SUBCASE("positive semidefinite for random parameters") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Matrix3d info = fisher_information(random_params(rng), points, 0.3, 2);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(info);
      CHECK(eig.eigenvalues()(0) > -1e-10 * eig.eigenvalues()(2));
    }
  }

  SUBCASE("maximum-likelihood fits at 40 dB track the bound") {
    // oracle: Gauss-Newton maximum-likelihood estimates over 10^4 noisy draws
    const int band = 2;
    const SampleSet clean = [&] {
      SampleSet s;
      s.points = points;
      s.values.resize(6);
      for (int n = 0; n < 6; ++n) s.values(n) = model_value(z, points[n], band);
      return s;
    }();
    const NoiseModel nm = NoiseModel::from_snr_db(40.0, 6);
    const double sigma = nm.resolve_sigma(clean);
    const Eigen::Vector3d bound = crlb(z, points, sigma, band);

    const int trials = 10000;
    std::vector<Eigen::Vector3d> errors(trials);
    parallel_for(trials, 2, [&](int t) {
      auto rng = trial_rng(2024, t);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Eigen::VectorXd mu(6);
      for (int n = 0; n < 6; ++n) mu(n) = clean.values(n).real() + sigma * gauss(rng);
      ParamVector est = z;
      for (int iter = 0; iter < 8; ++iter) {
        Eigen::MatrixXd jac(6, 3);
        Eigen::VectorXd res(6);
        for (int n = 0; n < 6; ++n) {
          const auto g = model_derivatives(est, points[n], band);
          jac(n, 0) = g.dalpha.real();
          jac(n, 1) = g.dtheta.real();
          jac(n, 2) = g.dphi.real();
          res(n) = mu(n) - model_value(est, points[n], band).real();
        }
        const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(res);
        est.alpha0 += step(0);
        est.theta0 += step(1);
        est.phi0 += step(2);
        if (step.norm() < 1e-12) break;
      }
      errors[t] = {est.alpha0 - z.alpha0, est.theta0 - z.theta0,
                   std::remainder(est.phi0 - z.phi0, kTwoPi)};
    });
    Eigen::Vector3d mse = Eigen::Vector3d::Zero();
    for (const auto& e : errors) mse += e.cwiseProduct(e);
    mse /= trials;
    for (int i = 0; i < 3; ++i) {
      const double ratio = mse(i) / bound(i);
      CHECK(ratio > 0.95);  // sampling tolerance below the unit floor
      CHECK(ratio < 3.0);
    }
  }
}

TEST_CASE("variance lower bounds") {
  const auto points = mw_grid_L2();

  SUBCASE("monotone in sigma") {
    const ParamVector z{1.0, kPi / 2, 0.7};
    const Eigen::Vector3d loose = crlb(z, points, 0.3, 2);
    const Eigen::Vector3d tight = crlb(z, points, 0.03, 2);
    for (int i = 0; i < 3; ++i) CHECK(tight(i) < loose(i));
  }

  SUBCASE("depends on the spike colatitude") {
    const Eigen::Vector3d at_quarter = crlb({1.0, kPi / 4, 1.0}, points, 0.1, 2);
    const Eigen::Vector3d at_equator = crlb({1.0, kPi / 2, 1.0}, points, 0.1, 2);
    CHECK(std::abs(at_quarter(1) - at_equator(1)) >
          1e-6 * (at_quarter(1) + at_equator(1)));
  }

  SUBCASE("matches the finite-difference Fisher oracle") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 10; ++i) {
      const ParamVector z = random_params(rng);
      const double sigma = 0.2;
      Eigen::Matrix3d info = Eigen::Matrix3d::Zero();
      for (const auto& point : points) {
        const auto g = fd_derivatives(z, point, 2);
        const Eigen::Vector3cd grad(g.dalpha, g.dtheta, g.dphi);
        info += (grad * grad.adjoint()).real();
      }
      info /= sigma * sigma;
      const Eigen::Vector3d oracle = info.inverse().diagonal();
      const Eigen::Vector3d bounds = crlb(z, points, sigma, 2);
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(bounds(j) - oracle(j)) < 1e-4 * std::abs(oracle(j)));
    }
  }
}

TEST_CASE("additive noise") {
  std::mt19937_64 rng(73);
  SampleSet clean;
  clean.points = random_sphere_points(10000, rng);
  clean.values = Eigen::VectorXcd::Constant(10000, Complex(1.0, 0.5));

  SUBCASE("zero sigma is the identity") {
    const auto out = add_noise(clean, NoiseModel::from_sigma(0.0, 10000), rng);
    CHECK((out.values - clean.values).norm() == 0.0);
  }

  SUBCASE("hits the SNR target within half a decibel") {
    for (const auto kind : {NoiseModel::Kind::Real, NoiseModel::Kind::Complex}) {
      const double target = 17.0;
      const auto noisy =
          add_noise(clean, NoiseModel::from_snr_db(target, 10000, kind), rng);
      const double noise_power = (noisy.values - clean.values).squaredNorm();
      const double achieved = 10.0 * std::log10(clean.values.squaredNorm() / noise_power);
      CHECK(std::abs(achieved - target) < 0.5);
    }
  }

  SUBCASE("seeded draws are reproducible") {
    std::mt19937_64 a(7), b(7);
    const auto na = add_noise(clean, NoiseModel::from_sigma(0.1, 10000), a);
    const auto nb = add_noise(clean, NoiseModel::from_sigma(0.1, 10000), b);
    CHECK((na.values - nb.values).norm() == 0.0);
  }

  SUBCASE("infinite SNR resolves to zero noise") {
    const auto nm = NoiseModel::from_snr_db(INFINITY, 10000);
    CHECK(nm.noiseless());
    CHECK(nm.resolve_sigma(clean) == 0.0);
  }
}

TEST_CASE("assignment matching and error metrics") {
  std::mt19937_64 rng(79);

  SUBCASE("identical and permuted ensembles score zero") {
    const auto truth = testsup::random_ensemble(4, rng);
    DiracEnsemble permuted;
    for (int k : {2, 0, 3, 1}) permuted.spikes.push_back(truth.spikes[k]);
    CHECK(match_and_mse(truth, truth).mse_greatcircle == 0.0);
    const auto mm = match_and_mse(truth, permuted);
    CHECK(mm.mse_greatcircle == 0.0);
    CHECK(mm.mse_amplitude == 0.0);
    CHECK(mm.assignment == std::vector<int>{1, 3, 0, 2});
  }

  SUBCASE("meridian displacement lands in the squared-error slot") {
    DiracEnsemble truth{{{Complex(1, 0), SphericalPoint(1.0, 2.0)}}};
    DiracEnsemble est{{{Complex(1, 0), SphericalPoint(1.0 + 1e-3, 2.0)}}};
    const auto mm = match_and_mse(truth, est);
    CHECK(mm.mse_greatcircle == doctest::Approx(1e-6).epsilon(1e-9));
    CHECK(mm.mse_theta_phi == doctest::Approx(1e-6).epsilon(1e-9));
  }

  SUBCASE("azimuth differences wrap") {
    DiracEnsemble truth{{{Complex(1, 0), SphericalPoint(1.0, 1e-4)}}};
    DiracEnsemble est{{{Complex(1, 0), SphericalPoint(1.0, kTwoPi - 1e-4)}}};
    CHECK(match_and_mse(truth, est).mse_theta_phi < 1e-6);
  }

  SUBCASE("size mismatch is rejected") {
    const auto a = testsup::random_ensemble(2, rng);
    const auto b = testsup::random_ensemble(3, rng);
    CHECK_THROWS_AS(match_and_mse(a, b), Error);
  }

  SUBCASE("large-K assignment agrees with brute force") {
    const auto truth = testsup::random_ensemble(8, rng);
    DiracEnsemble shuffled;
    std::vector<int> perm{5, 2, 7, 0, 4, 6, 1, 3};
    for (int k : perm) shuffled.spikes.push_back(truth.spikes[k]);
    const auto mm = match_and_mse(truth, shuffled);  // Hungarian path (K > 6)
    CHECK(mm.mse_greatcircle == 0.0);
    for (int i = 0; i < 8; ++i) CHECK(perm[mm.assignment[i]] == i);
  }
}

TEST_CASE("error sweep against the variance bound") {
  MonteCarloConfig config;
  config.spike_count = 1;
  config.band = 2;
  config.points = mw_grid_L2();
  config.trials = 120;
  config.seed = 11;
  config.jobs = 2;
  config.truth.spikes.push_back({Complex(1.0, 0.0), SphericalPoint(kPi / 2, 1.0)});

  SUBCASE("deterministic and refined beats raw at moderate noise") {
    config.snrs_db = {30.0};
    config.refine = true;
    const auto refined = monte_carlo_mse(config);
    const auto refined_again = monte_carlo_mse(config);
    CHECK(refined.rows[0].mse_theta_phi == refined_again.rows[0].mse_theta_phi);
    config.refine = false;
    const auto raw = monte_carlo_mse(config);
    CHECK(refined.rows[0].mse_theta_phi <= raw.rows[0].mse_theta_phi);
  }

  SUBCASE("tracks the bound at high SNR and decreases with SNR") {
    config.snrs_db = {20.0, 40.0, 60.0};
    config.refine = true;
    const auto result = monte_carlo_mse(config);
    const auto& rows = result.rows;
    CHECK(rows[2].mse_theta_phi < rows[0].mse_theta_phi);
    const double bound60 = rows[2].crlb_theta + rows[2].crlb_phi;
    CHECK(rows[2].mse_theta_phi < 10.0 * bound60);
    // above the bound, allowing bootstrap uncertainty
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto ci =
          bootstrap_mean_interval(result.per_trial_theta_phi[i], 0.95, 400, 99);
      CHECK(ci.second >= rows[i].crlb_theta + rows[i].crlb_phi);
    }
  }

  SUBCASE("noiseless sweep recovers exactly and reports zero bound") {
    config.snrs_db = {INFINITY};
    config.refine = false;
    const auto result = monte_carlo_mse(config);
    CHECK(result.rows[0].failures == 0);
    CHECK(result.rows[0].mse_theta_phi < 1e-12);
    CHECK(result.rows[0].crlb_theta == 0.0);
  }

  SUBCASE("zero trials is an error") {
    config.trials = 0;
    config.snrs_db = {20.0};
    CHECK_THROWS_AS(monte_carlo_mse(config), Error);
  }
}
