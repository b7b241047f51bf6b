#pragma once

#include <random>

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Proper rotation of R^3, stored both as ZYZ Euler angles (alpha, beta,
/// gamma) and as the cached orthogonal matrix R = Rz(alpha) Ry(beta) Rz(gamma).
class EulerRotation {
public:
  EulerRotation() : alpha_(0), beta_(0), gamma_(0), matrix_(Eigen::Matrix3d::Identity()) {}
  EulerRotation(double alpha, double beta, double gamma);
  explicit EulerRotation(const Eigen::Matrix3d& matrix);

  static EulerRotation identity() { return {}; }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const Eigen::Matrix3d& matrix() const { return matrix_; }

private:
  double alpha_, beta_, gamma_;
  Eigen::Matrix3d matrix_;
};

/// Applies a then b (matrix product b * a as operators on column vectors).
EulerRotation compose(const EulerRotation& b, const EulerRotation& a);

EulerRotation inverse(const EulerRotation& r);

/// Rotation about the z-axis by alpha.
EulerRotation rotation_z(double alpha);

SphericalPoint rotate_point(const EulerRotation& r, const SphericalPoint& p);

/// Rotation drawn from the invariant (Haar) measure on the rotation group,
/// via a uniformly distributed unit quaternion.
EulerRotation random_rotation(std::mt19937_64& rng);

}  // namespace sphfri
