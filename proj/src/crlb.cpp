#include "sphfri/crlb.hpp"

#include <cmath>

#include "sphfri/harmonics.hpp"

namespace sphfri {

std::vector<SphericalPoint> mw_grid_L2() {
  std::vector<SphericalPoint> points;
  for (const double phi : {0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0})
    for (const double theta : {kPi / 3.0, kPi}) points.emplace_back(theta, phi);
  return points;
}

namespace {

void check_interior(const ParamVector& z) {
  if (!(std::sin(z.theta0) > 1e-12))
    throw Error("single-spike model derivatives diverge at the poles (theta0 = " +
                std::to_string(z.theta0) + ")");
}

}  // namespace

Complex model_value(const ParamVector& z, const SphericalPoint& point, int band) {
  const Eigen::VectorXcd at_spike = harmonics_at({z.theta0, z.phi0}, band);
  const Eigen::VectorXcd at_point = harmonics_at(point, band);
  return z.alpha0 * at_spike.dot(at_point);  // dot conjugates its left factor
}

ModelGradient model_derivatives(const ParamVector& z, const SphericalPoint& point, int band) {
  check_interior(z);
  const SphericalPoint spike{z.theta0, z.phi0};
  const Eigen::VectorXcd conj_at_spike = harmonics_at(spike, band).conjugate();
  const Eigen::VectorXcd dtheta_conj = conj_harmonics_theta_grad(spike, band);
  const Eigen::VectorXcd at_point = harmonics_at(point, band);

  ModelGradient g{Complex(0, 0), Complex(0, 0), Complex(0, 0)};
  for (int l = 0; l < band; ++l)
    for (int m = -l; m <= l; ++m) {
      const auto idx = SpectrumTriangle::index(l, m);
      g.dalpha += conj_at_spike(idx) * at_point(idx);
      g.dtheta += z.alpha0 * dtheta_conj(idx) * at_point(idx);
      g.dphi += z.alpha0 * Complex(0, -m) * conj_at_spike(idx) * at_point(idx);
    }
  return g;
}

Eigen::Matrix3d fisher_information(const ParamVector& z,
                                   const std::vector<SphericalPoint>& points, double sigma,
                                   int band) {
  check_interior(z);
  if (!(sigma > 0.0)) throw Error("fisher_information: sigma must be positive");
  Eigen::Matrix3d info = Eigen::Matrix3d::Zero();
  for (const auto& point : points) {
    const ModelGradient g = model_derivatives(z, point, band);
    const Eigen::Vector3cd grad(g.dalpha, g.dtheta, g.dphi);
    info += (grad * grad.adjoint()).real();
  }
  info /= sigma * sigma;
  return 0.5 * (info + info.transpose());
}

Eigen::Vector3d crlb(const ParamVector& z, const std::vector<SphericalPoint>& points,
                     double sigma, int band) {
  const Eigen::Matrix3d info = fisher_information(z, points, sigma, band);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(info);
  const double lo = eig.eigenvalues()(0), hi = eig.eigenvalues()(2);
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw RankDeficient("Fisher information matrix is numerically singular", band,
                        static_cast<Eigen::Index>(points.size()), lo > 0.0 ? hi / lo : INFINITY);
  return info.inverse().diagonal();
}

}  // namespace sphfri
