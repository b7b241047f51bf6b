#include "sphfri/data_matrix.hpp"

#include <cmath>
#include <limits>

namespace sphfri {

DataMatrix DataMatrix::from_full(int band, Eigen::MatrixXcd entries) {
  if (band < 1 || entries.rows() != band || entries.cols() != 2 * band - 1)
    throw Error("data matrix must be band x (2*band - 1)");
  return DataMatrix(band, true, std::move(entries));
}

DataMatrix DataMatrix::from_triangle(int band, Eigen::MatrixXcd entries) {
  if (band < 1 || entries.rows() != band || entries.cols() != 2 * band - 1)
    throw Error("data matrix must be band x (2*band - 1)");
  // poison the unknown region so accidental reads are loud
  const Complex nan(std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN());
  for (int p = 0; p < band; ++p)
    for (int m = -(band - 1); m <= band - 1; ++m)
      if (p + std::abs(m) > band - 1) entries(p, m + band - 1) = nan;
  return DataMatrix(band, false, std::move(entries));
}

Eigen::VectorXcd DataMatrix::known_column(int m) const {
  const int len = band_ - std::abs(m);
  Eigen::VectorXcd col(len);
  for (int p = 0; p < len; ++p) col(p) = entries_(p, m + band_ - 1);
  return col;
}

DataMatrix data_matrix_from_params(const DiracEnsemble& f, int band) {
  validate_ensemble(f);
  if (band < 1) throw Error("data_matrix_from_params: band must be >= 1");
  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(band, 2 * band - 1);
  for (const auto& spike : f.spikes) {
    const double x = std::cos(spike.location.theta);
    const double s = std::sin(spike.location.theta);
    double xp = 1.0;
    for (int p = 0; p < band; ++p) {
      for (int m = -(band - 1); m <= band - 1; ++m) {
        const double sm = std::pow(s, std::abs(m));
        entries(p, m + band - 1) +=
            spike.amplitude * xp * sm * std::polar(1.0, -m * spike.location.phi);
      }
      xp *= x;
    }
  }
  return DataMatrix::from_full(band, std::move(entries));
}

Eigen::VectorXcd column_from_spectrum(const SpectrumTriangle& fhat, int m,
                                      const PolyCoeffTable& table) {
  const int band = fhat.band();
  if (table.band() != band) throw Error("coefficient table band mismatch");
  const int am = std::abs(m);
  if (am > band - 1) throw Error("column order out of range");
  const int n = band - am;

  // Row i stacks the coefficients of c_{l m} with l = |m| + i over powers
  // 0..n-1; the degree property makes the system lower-triangular with
  // nonzero diagonal, so it cannot be singular.
  Eigen::MatrixXd sys(n, n);
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) {
    const int l = am + i;
    for (int j = 0; j < n; ++j) sys(i, j) = table.coeff_for_power(l, m, j);
    rhs(i) = fhat(l, m);
  }
  for (int i = 0; i < n; ++i)
    if (sys(i, i) == 0.0) throw Error("per-order system unexpectedly singular");
  return sys.triangularView<Eigen::Lower>().solve(rhs.eval()).eval();
}

DataMatrix spectrum_to_data_matrix(const SpectrumTriangle& fhat, const PolyCoeffTable& table) {
  const int band = fhat.band();
  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(band, 2 * band - 1);
  for (int m = -(band - 1); m <= band - 1; ++m) {
    const Eigen::VectorXcd col = column_from_spectrum(fhat, m, table);
    for (int p = 0; p < col.size(); ++p) entries(p, m + band - 1) = col(p);
  }
  return DataMatrix::from_triangle(band, std::move(entries));
}

DataMatrix spectrum_to_data_matrix(const SpectrumTriangle& fhat) {
  return spectrum_to_data_matrix(fhat, poly_coeffs(fhat.band()));
}

SpectrumTriangle data_matrix_to_spectrum(const DataMatrix& d, const PolyCoeffTable& table) {
  const int band = d.band();
  if (table.band() != band) throw Error("coefficient table band mismatch");
  SpectrumTriangle fhat(band);
  for (int l = 0; l < band; ++l)
    for (int m = -l; m <= l; ++m) {
      Complex acc(0, 0);
      for (int p = 0; p <= l - std::abs(m); ++p)
        acc += table.coeff_for_power(l, m, p) * d.at(p, m);
      fhat(l, m) = acc;
    }
  return fhat;
}

SpectrumTriangle data_matrix_to_spectrum(const DataMatrix& d) {
  return data_matrix_to_spectrum(d, poly_coeffs(d.band()));
}

}  // namespace sphfri
