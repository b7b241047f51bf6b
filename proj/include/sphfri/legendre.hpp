#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sphfri/types.hpp"

namespace sphfri {

/// Legendre polynomial P_l(x) by the three-term recurrence.
template <typename Real>
Real legendre_p(int l, Real x) {
  if (l < 0) throw Error("legendre_p: negative degree");
  Real p0 = Real(1);
  if (l == 0) return p0;
  Real p1 = x;
  for (int k = 2; k <= l; ++k) {
    const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / Real(k);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Associated Legendre function P_l^m(x) with the Condon-Shortley factor
/// (-1)^m, for 0 <= m <= l and |x| <= 1. Stable upward recurrence in l,
/// seeded from the closed form of P_m^m; accurate up to l around 50.
template <typename Real>
Real assoc_legendre(int l, int m, Real x) {
  if (m < 0 || m > l) throw Error("assoc_legendre: order must satisfy 0 <= m <= l");
  using std::abs;
  using std::sqrt;
  if (abs(x) > Real(1)) throw Error("assoc_legendre: argument outside [-1, 1]");

  // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
  Real pmm = Real(1);
  if (m > 0) {
    const Real s2 = (Real(1) - x) * (Real(1) + x);
    const Real s = sqrt(s2);
    Real fact = Real(1);
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * s;
      fact += Real(2);
    }
  }
  if (l == m) return pmm;

  Real pm1 = x * (2 * m + 1) * pmm;  // P_{m+1}^m
  if (l == m + 1) return pm1;

  Real pll = Real(0);
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2 * ll - 1) * x * pm1 - (ll + m - 1) * pmm) / Real(ll - m);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

/// Per-(l, m) coefficient vectors c_{lm} of length L over decreasing powers
/// [x^{L-1}, ..., x, 1], such that
///
///   Y_l^m(theta, phi) = (c_{lm} . [x^{L-1},...,1]) (sin theta)^{|m|} e^{i m phi}
///
/// with x = cos(theta). The polynomial part has degree l - |m| (it is the
/// |m|-th derivative of P_l scaled by the harmonic normalization). Built
/// once per bandwidth by an exact rational recurrence; see poly_coeffs().
class PolyCoeffTable {
public:
  PolyCoeffTable(int band, std::vector<Eigen::VectorXd> table)
      : band_(band), table_(std::move(table)) {}

  int band() const { return band_; }

  /// Coefficients over decreasing powers for |m| <= l < band.
  const Eigen::VectorXd& c(int l, int m) const {
    return table_[static_cast<std::size_t>(SpectrumTriangle::index(l, m))];
  }

  /// Coefficient of x^p in c(l, m).
  double coeff_for_power(int l, int m, int p) const {
    return c(l, m)(band_ - 1 - p);
  }

private:
  int band_;
  std::vector<Eigen::VectorXd> table_;  // triangle-indexed, like SpectrumTriangle
};

/// Builds the coefficient table for bandwidth L >= 1.
PolyCoeffTable poly_coeffs(int band);

}  // namespace sphfri
