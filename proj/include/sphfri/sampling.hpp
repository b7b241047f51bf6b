#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Scattered spatial samples of a (complex-valued) function on the sphere.
struct SampleSet {
  std::vector<SphericalPoint> points;
  Eigen::VectorXcd values;

  Eigen::Index size() const { return values.size(); }
};

void validate_samples(const SampleSet& s);

/// N i.i.d. points uniform on the sphere: cos(theta) ~ U[-1,1], phi ~ U[0,2pi).
std::vector<SphericalPoint> random_sphere_points(int n, std::mt19937_64& rng);

/// Deterministic quasi-uniform layout (golden-angle spiral). Near-minimal
/// sampling matrices from this design stay well conditioned, unlike
/// i.i.d.-random draws of the same size.
std::vector<SphericalPoint> fibonacci_sphere_points(int n);

/// N x L^2 matrix with entry (n, idx(l,m)) = Y_l^m(points[n]).
Eigen::MatrixXcd build_sampling_matrix(const std::vector<SphericalPoint>& points, int band);

/// Least-squares spectrum from scattered samples via the SVD pseudoinverse
/// (relative singular-value cutoff 1e-12). Requires N >= band^2; throws
/// RankDeficient when the sampling matrix condition number exceeds
/// `condition_limit`.
SpectrumTriangle spectrum_from_samples(const SampleSet& s, int band,
                                       double condition_limit = 1e12);

/// Evaluates the finite expansion sum fhat_l^m Y_l^m at the given points.
SampleSet synthesize_samples(const SpectrumTriangle& fhat,
                             const std::vector<SphericalPoint>& points);

}  // namespace sphfri
