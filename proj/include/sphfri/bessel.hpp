#pragma once

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

enum class BesselKind { j, y, h1 };

/// Spherical Bessel functions of the first kind j_0..j_lmax. Downward
/// (Miller) recurrence normalized against the closed forms of j_0/j_1;
/// entries beyond the turnover that underflow are zero. Requires x >= 0.
Eigen::VectorXd bessel_j_array(int lmax, double x);

/// Spherical Bessel functions of the second kind y_0..y_lmax by the upward
/// recurrence (stable for this kind). Requires x > 0; throws on overflow at
/// extreme order/argument ratios.
Eigen::VectorXd bessel_y_array(int lmax, double x);

struct BesselValue {
  Complex value;
  Complex derivative;  ///< with respect to the argument
};

/// Value and derivative of j, y, or the outgoing Hankel function h1 = j + iy,
/// via f'_l = f_{l-1} - (l+1)/x f_l.
BesselValue spherical_bessel(BesselKind kind, int l, double x);

/// Radial response of a rigid sphere of radius r at wavenumber kappa:
///   b_l(x) = j_l(x) - j'_l(x)/h1'_l(x) * h1_l(x),  x = kappa * r.
Complex mode_strength(int l, double x);

}  // namespace sphfri
