#include "sphfri/harmonics.hpp"

#include <cmath>

#include "sphfri/legendre.hpp"

namespace sphfri {

double sph_norm(int l, int m) {
  const int am = std::abs(m);
  if (am > l) throw Error("sph_norm: |m| must not exceed l");
  // sqrt((2l+1)/(4 pi) * (l-|m|)!/(l+|m|)!) without forming the factorials
  double n = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
  for (int j = l - am + 1; j <= l + am; ++j) n /= std::sqrt(static_cast<double>(j));
  const int phase = (m + am) / 2;
  return (phase % 2 == 0) ? n : -n;
}

Complex sph_harmonic(int l, int m, const SphericalPoint& p) {
  const int am = std::abs(m);
  if (am > l) throw Error("sph_harmonic: |m| must not exceed l");
  const double value = sph_norm(l, m) * assoc_legendre(l, am, std::cos(p.theta));
  return value * std::polar(1.0, m * p.phi);
}

Eigen::VectorXcd harmonics_at(const SphericalPoint& p, int band) {
  if (band < 1) throw Error("harmonics_at: band must be >= 1");
  const double x = std::cos(p.theta);
  const double s = std::sin(p.theta);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(band) * band);

  // March l upward for each order m; fill m < 0 via Y_l^{-m} = (-1)^m conj(Y_l^m).
  double pmm = 1.0;  // P_m^m
  double fact = 1.0;
  for (int m = 0; m < band; ++m) {
    const Complex eimp = std::polar(1.0, m * p.phi);
    double plm2 = pmm;               // P_m^m
    double plm1 = x * (2 * m + 1) * pmm;  // P_{m+1}^m
    for (int l = m; l < band; ++l) {
      double plm;
      if (l == m) {
        plm = plm2;
      } else if (l == m + 1) {
        plm = plm1;
      } else {
        plm = ((2 * l - 1) * x * plm1 - (l + m - 1) * plm2) / static_cast<double>(l - m);
        plm2 = plm1;
        plm1 = plm;
      }
      const Complex y = sph_norm(l, m) * plm * eimp;
      out(SpectrumTriangle::index(l, m)) = y;
      if (m > 0)
        out(SpectrumTriangle::index(l, -m)) = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
    }
    pmm *= -fact * s;
    fact += 2.0;
  }
  return out;
}

Eigen::VectorXcd conj_harmonics_theta_grad(const SphericalPoint& p, int band) {
  const double s = std::sin(p.theta);
  if (!(s > 0.0))
    throw Error("conj_harmonics_theta_grad: derivative diverges at the poles");
  const double cot = std::cos(p.theta) / s;
  const Complex eip = std::polar(1.0, p.phi);
  const Eigen::VectorXcd conj_y = harmonics_at(p, band).conjugate();
  Eigen::VectorXcd grad(conj_y.size());
  for (int l = 0; l < band; ++l)
    for (int m = -l; m <= l; ++m) {
      Complex g = static_cast<double>(m) * cot * conj_y(SpectrumTriangle::index(l, m));
      if (m < l)
        g -= std::sqrt(static_cast<double>(l - m) * (l + m + 1)) * eip *
             conj_y(SpectrumTriangle::index(l, m + 1));
      grad(SpectrumTriangle::index(l, m)) = g;
    }
  return grad;
}

SpectrumTriangle dirac_spectrum(const DiracEnsemble& f, int band) {
  validate_ensemble(f);
  SpectrumTriangle fhat(band);
  for (const auto& spike : f.spikes)
    fhat.coeffs() += spike.amplitude * harmonics_at(spike.location, band).conjugate();
  return fhat;
}

SpectrumTriangle truncate_spectrum(const SpectrumTriangle& fhat, int band) {
  if (band < 1 || band > fhat.band())
    throw Error("truncate_spectrum: band must satisfy 1 <= band <= input band");
  SpectrumTriangle out(band);
  out.coeffs() = fhat.coeffs().head(static_cast<Eigen::Index>(band) * band);
  return out;
}

namespace {
void check_kernel_band(const SpectrumTriangle& fhat, const Eigen::VectorXcd& hhat_zonal) {
  if (hhat_zonal.size() < fhat.band())
    throw Error("zonal kernel has fewer degrees (" + std::to_string(hhat_zonal.size()) +
                ") than the spectrum band (" + std::to_string(fhat.band()) + ")");
}
}  // namespace

SpectrumTriangle convolve_spectra(const SpectrumTriangle& fhat,
                                  const Eigen::VectorXcd& hhat_zonal) {
  check_kernel_band(fhat, hhat_zonal);
  SpectrumTriangle out(fhat.band());
  for (int l = 0; l < fhat.band(); ++l) {
    const Complex factor = std::sqrt(4.0 * kPi / (2.0 * l + 1.0)) * hhat_zonal(l);
    for (int m = -l; m <= l; ++m) out(l, m) = factor * fhat(l, m);
  }
  return out;
}

SpectrumTriangle deconvolve_spectra(const SpectrumTriangle& yhat,
                                    const Eigen::VectorXcd& hhat_zonal,
                                    double threshold) {
  check_kernel_band(yhat, hhat_zonal);
  std::vector<int> bad;
  for (int l = 0; l < yhat.band(); ++l)
    if (std::abs(hhat_zonal(l)) < threshold) bad.push_back(l);
  if (!bad.empty()) {
    std::string degrees;
    for (int l : bad) degrees += (degrees.empty() ? "" : ", ") + std::to_string(l);
    throw NonInvertibleKernel("kernel non-invertible at degrees {" + degrees + "}", bad);
  }
  SpectrumTriangle out(yhat.band());
  for (int l = 0; l < yhat.band(); ++l) {
    const Complex factor = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi)) / hhat_zonal(l);
    for (int m = -l; m <= l; ++m) out(l, m) = factor * yhat(l, m);
  }
  return out;
}

}  // namespace sphfri
