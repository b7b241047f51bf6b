#include "sphfri/legendre.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "sphfri/harmonics.hpp"

namespace sphfri {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Coefficients of P_l in increasing powers of x, exact.
std::vector<std::vector<Rational>> legendre_coefficients(int band) {
  std::vector<std::vector<Rational>> p(band);
  p[0] = {Rational(1)};
  if (band > 1) p[1] = {Rational(0), Rational(1)};
  for (int k = 2; k < band; ++k) {
    std::vector<Rational> pk(k + 1, Rational(0));
    for (int j = 0; j < k; ++j) pk[j + 1] += Rational(2 * k - 1) * p[k - 1][j];
    for (int j = 0; j + 2 < k + 1; ++j) pk[j] -= Rational(k - 1) * p[k - 2][j];
    for (auto& c : pk) c /= k;
    p[k] = std::move(pk);
  }
  return p;
}

// m-th derivative on the coefficient sequence, exact.
std::vector<Rational> differentiate(std::vector<Rational> c, int m) {
  for (int d = 0; d < m; ++d) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) c[j] = Rational(j + 1) * c[j + 1];
    c.pop_back();
    if (c.empty()) return {Rational(0)};
  }
  return c;
}

}  // namespace

PolyCoeffTable poly_coeffs(int band) {
  if (band < 1) throw Error("poly_coeffs: band must be >= 1");
  const auto legendre = legendre_coefficients(band);

  std::vector<Eigen::VectorXd> table(static_cast<std::size_t>(band) * band);
  for (int l = 0; l < band; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto dm = differentiate(legendre[l], std::abs(m));
      // (-1)^m N_l^m, the zonal normalization attached to the derivative form
      const double scale = (m % 2 == 0 ? 1.0 : -1.0) * sph_norm(l, m);
      Eigen::VectorXd c = Eigen::VectorXd::Zero(band);
      for (std::size_t j = 0; j < dm.size(); ++j)
        c(band - 1 - static_cast<int>(j)) = scale * dm[j].convert_to<double>();
      table[static_cast<std::size_t>(SpectrumTriangle::index(l, m))] = std::move(c);
    }
  }
  return PolyCoeffTable(band, std::move(table));
}

}  // namespace sphfri
