#include "sphfri/rotation.hpp"

#include <cmath>

namespace sphfri {

namespace {

Eigen::Matrix3d rz(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return m;
}

Eigen::Matrix3d ry(double b) {
  Eigen::Matrix3d m;
  m << std::cos(b), 0.0, std::sin(b), 0.0, 1.0, 0.0, -std::sin(b), 0.0, std::cos(b);
  return m;
}

}  // namespace

EulerRotation::EulerRotation(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma), matrix_(rz(alpha) * ry(beta) * rz(gamma)) {}

EulerRotation::EulerRotation(const Eigen::Matrix3d& matrix) : matrix_(matrix) {
  if ((matrix * matrix.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-9 ||
      matrix.determinant() < 0.0)
    throw Error("EulerRotation: matrix is not a proper rotation");
  // ZYZ extraction; beta in [0, pi]. At the gimbal configurations
  // (beta = 0 or pi) only alpha +/- gamma is determined; fix gamma = 0.
  const double sb = std::hypot(matrix(0, 2), matrix(1, 2));
  beta_ = std::atan2(sb, matrix(2, 2));
  if (sb > 1e-12) {
    alpha_ = std::atan2(matrix(1, 2), matrix(0, 2));
    gamma_ = std::atan2(matrix(2, 1), -matrix(2, 0));
  } else {
    gamma_ = 0.0;
    if (matrix(2, 2) > 0.0)
      alpha_ = std::atan2(matrix(1, 0), matrix(0, 0));
    else
      alpha_ = std::atan2(-matrix(1, 0), -matrix(0, 0));
  }
}

EulerRotation compose(const EulerRotation& b, const EulerRotation& a) {
  return EulerRotation(Eigen::Matrix3d(b.matrix() * a.matrix()));
}

EulerRotation inverse(const EulerRotation& r) {
  return EulerRotation(Eigen::Matrix3d(r.matrix().transpose()));
}

EulerRotation rotation_z(double alpha) { return EulerRotation(alpha, 0.0, 0.0); }

SphericalPoint rotate_point(const EulerRotation& r, const SphericalPoint& p) {
  return cart_to_sph(r.matrix() * sph_to_cart(p));
}

EulerRotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  q.normalize();
  return EulerRotation(q.toRotationMatrix());
}

}  // namespace sphfri
