#pragma once

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Normalization constant N_l^m of the spherical harmonic Y_l^m, including
/// the phase (-1)^{(m+|m|)/2}.
double sph_norm(int l, int m);

/// Spherical harmonic Y_l^m(theta, phi) = N_l^m P_l^{|m|}(cos theta) e^{i m phi}.
Complex sph_harmonic(int l, int m, const SphericalPoint& p);

/// All harmonics Y_l^m(p) for (l, m) in the bandwidth-L triangle, flattened
/// in SpectrumTriangle order. One upward recurrence per order; O(L^2).
Eigen::VectorXcd harmonics_at(const SphericalPoint& p, int band);

/// Colatitude derivatives d conj(Y_l^m)/d theta over the triangle, from the
/// order-raising ladder
///   d conj(Y_l^m)/d theta
///     = m cot(theta) conj(Y_l^m) - sqrt((l-m)(l+m+1)) e^{i phi} conj(Y_l^{m+1})
/// (the ladder sign follows the phase convention of sph_norm). Diverges at
/// the poles; requires sin(theta) > 0.
Eigen::VectorXcd conj_harmonics_theta_grad(const SphericalPoint& p, int band);

/// Spectrum of a weighted spike collection: fhat_l^m = sum_k a_k conj(Y_l^m(xi_k)).
SpectrumTriangle dirac_spectrum(const DiracEnsemble& f, int band);

/// Restriction of a spectrum to a smaller band.
SpectrumTriangle truncate_spectrum(const SpectrumTriangle& fhat, int band);

/// Spectrum of the convolution of f with a zonal kernel whose degree-l
/// coefficients are hhat_zonal(l):
///   out_l^m = sqrt(4*pi/(2l+1)) * fhat_l^m * hhat_zonal(l).
SpectrumTriangle convolve_spectra(const SpectrumTriangle& fhat,
                                  const Eigen::VectorXcd& hhat_zonal);

/// Inverse of convolve_spectra. Degrees with |hhat_zonal(l)| below `threshold`
/// make the kernel non-invertible and are reported via NonInvertibleKernel.
SpectrumTriangle deconvolve_spectra(const SpectrumTriangle& yhat,
                                    const Eigen::VectorXcd& hhat_zonal,
                                    double threshold = 1e-12);

}  // namespace sphfri
