#pragma once

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Equiangular 2L' x 2L' grid with nodes theta_p = p*pi/(2L'), phi_q = q*pi/L'
/// (p, q = 0..2L'-1) and colatitude quadrature weights that make the spectrum
/// sum exact for signals bandlimited below L'.
class DHGrid {
public:
  DHGrid(int band, Eigen::VectorXd weights) : band_(band), weights_(std::move(weights)) {}

  int band() const { return band_; }
  int rings() const { return 2 * band_; }
  Eigen::Index node_count() const { return static_cast<Eigen::Index>(4) * band_ * band_; }

  double theta(int p) const { return p * kPi / (2.0 * band_); }
  double phi(int q) const { return q * kPi / band_; }
  SphericalPoint node(int p, int q) const { return {theta(p), phi(q)}; }

  /// Row-major flat index (p outer, q inner).
  Eigen::Index node_index(int p, int q) const {
    return static_cast<Eigen::Index>(p) * rings() + q;
  }

  /// Colatitude weight of ring p.
  double weight(int p) const { return weights_(p); }
  const Eigen::VectorXd& weights() const { return weights_; }

private:
  int band_;
  Eigen::VectorXd weights_;
};

/// Builds the grid for band L' >= 1. The weights solve the exactness
/// conditions sum_p a_p P_l(cos theta_p) = (2*pi/L') delta_{l,0} for
/// l = 0 .. 2L'-1, so the composite rule with the exact azimuthal DFT
/// integrates all products of harmonics below band L'.
DHGrid dh_grid(int band);

/// Spectrum up to `band` <= grid band from values at all 4L'^2 nodes,
/// row-major (p outer, q inner):
///   fhat_l^m = sum_{p,q} a_p f(theta_p, phi_q) conj(Y_l^m(theta_p, phi_q)).
SpectrumTriangle dh_spectrum(const DHGrid& grid, const Eigen::VectorXcd& values, int band);

}  // namespace sphfri
