#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Parameters of the single-spike estimation problem: real amplitude and
/// location, zeta = [alpha0, theta0, phi0].
struct ParamVector {
  double alpha0;
  double theta0;  ///< must lie strictly inside (0, pi)
  double phi0;
};

/// The six-node equiangular band-2 grid used for the single-spike bound:
/// colatitudes {pi/3, pi} crossed with azimuths {0, 2pi/3, 4pi/3}, ordered
/// azimuth-outer so that node 1 is (pi/3, 0) and node 4 is (pi, 2pi/3).
std::vector<SphericalPoint> mw_grid_L2();

/// Bandlimited single-spike model f(xi) = alpha0 sum_{l<L,|m|<=l}
/// conj(Y_l^m(xi0)) Y_l^m(xi) evaluated at one point.
Complex model_value(const ParamVector& z, const SphericalPoint& point, int band);

/// Derivatives of the model with respect to (alpha0, theta0, phi0).
struct ModelGradient {
  Complex dalpha;
  Complex dtheta;
  Complex dphi;
};
ModelGradient model_derivatives(const ParamVector& z, const SphericalPoint& point, int band);

/// Fisher information sigma^-2 sum_n Re(grad f_n grad f_n^H), symmetrized.
Eigen::Matrix3d fisher_information(const ParamVector& z,
                                   const std::vector<SphericalPoint>& points, double sigma,
                                   int band);

/// Per-parameter variance lower bounds: the diagonal of the inverse Fisher
/// matrix, ordered (alpha0, theta0, phi0). Throws when the information
/// matrix is numerically singular (condition above 1e12).
Eigen::Vector3d crlb(const ParamVector& z, const std::vector<SphericalPoint>& points,
                     double sigma, int band);

}  // namespace sphfri
