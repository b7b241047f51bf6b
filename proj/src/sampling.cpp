#include "sphfri/sampling.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "sphfri/harmonics.hpp"

namespace sphfri {

void validate_samples(const SampleSet& s) {
  if (s.points.empty() || s.values.size() == 0)
    throw Error("sample set must not be empty");
  if (static_cast<Eigen::Index>(s.points.size()) != s.values.size())
    throw Error("sample set points and values must have equal length");
}

std::vector<SphericalPoint> random_sphere_points(int n, std::mt19937_64& rng) {
  if (n < 1) throw Error("random_sphere_points: need n >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SphericalPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = 2.0 * unit(rng) - 1.0;
    const double phi = kTwoPi * unit(rng);
    points.emplace_back(std::acos(std::min(std::max(z, -1.0), 1.0)), phi);
  }
  return points;
}

std::vector<SphericalPoint> fibonacci_sphere_points(int n) {
  if (n < 1) throw Error("fibonacci_sphere_points: need n >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<SphericalPoint> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    points.emplace_back(std::acos(z), wrap_azimuth(i * golden_angle));
  }
  return points;
}

Eigen::MatrixXcd build_sampling_matrix(const std::vector<SphericalPoint>& points, int band) {
  if (points.empty()) throw Error("build_sampling_matrix: need at least one point");
  Eigen::MatrixXcd y(points.size(), static_cast<Eigen::Index>(band) * band);
  for (std::size_t n = 0; n < points.size(); ++n)
    y.row(n) = harmonics_at(points[n], band).transpose();
  return y;
}

SpectrumTriangle spectrum_from_samples(const SampleSet& s, int band, double condition_limit) {
  validate_samples(s);
  const Eigen::Index n = s.size();
  const Eigen::Index dim = static_cast<Eigen::Index>(band) * band;
  if (n < dim)
    throw Error("spectrum_from_samples: underdetermined, " + std::to_string(n) +
                " samples < " + std::to_string(dim) + " coefficients (band " +
                std::to_string(band) + ")");

  const Eigen::MatrixXcd y = build_sampling_matrix(s.points, band);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double condition = sv(0) / sv(dim - 1);
  if (!(sv(dim - 1) > 0.0) || condition > condition_limit)
    throw RankDeficient("spectrum_from_samples: sampling matrix rank-deficient at band " +
                            std::to_string(band) + " with " + std::to_string(n) +
                            " samples (condition " + std::to_string(condition) + ")",
                        band, n, condition);
  svd.setThreshold(1e-12);
  return SpectrumTriangle(band, svd.solve(s.values));
}

SampleSet synthesize_samples(const SpectrumTriangle& fhat,
                             const std::vector<SphericalPoint>& points) {
  SampleSet out;
  out.points = points;
  out.values = build_sampling_matrix(points, fhat.band()) * fhat.coeffs();
  return out;
}

}  // namespace sphfri
