#pragma once

#include <Eigen/Dense>

#include "sphfri/legendre.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// L x (2L-1) matrix with rows indexed by the power p of cos(theta)
/// (p = L-1 at the top down to 0) and columns by the order m from -(L-1) to
/// L-1. For a spike collection, entry (p, m) equals
///
///   sum_k a_k (cos theta_k)^p (sin theta_k)^{|m|} e^{-i m phi_k}.
///
/// A spectrum determines only the triangular part {(p, m) : p + |m| < L};
/// entries outside it are flagged unknown and must never be read.
class DataMatrix {
public:
  static DataMatrix from_full(int band, Eigen::MatrixXcd entries);
  static DataMatrix from_triangle(int band, Eigen::MatrixXcd entries);

  int band() const { return band_; }
  bool full() const { return full_; }

  bool known(int p, int m) const {
    return p >= 0 && p < band_ && std::abs(m) < band_ &&
           (full_ || p + std::abs(m) <= band_ - 1);
  }

  Complex at(int p, int m) const {
    if (!known(p, m))
      throw Error("data matrix entry (p=" + std::to_string(p) + ", m=" + std::to_string(m) +
                  ") is unknown at band " + std::to_string(band_));
    return entries_(p, m + band_ - 1);
  }

  /// Triangular part of column m as a vector over increasing powers
  /// p = 0 .. (band-1-|m|). This is the spectrum-determined region even when
  /// the whole matrix happens to be known.
  Eigen::VectorXcd known_column(int m) const;

private:
  DataMatrix(int band, bool full, Eigen::MatrixXcd entries)
      : band_(band), full_(full), entries_(std::move(entries)) {}

  int band_;
  bool full_;
  Eigen::MatrixXcd entries_;  // row index = power p, column index = m + band - 1
};

/// Exact data matrix of a spike collection (all entries known).
DataMatrix data_matrix_from_params(const DiracEnsemble& f, int band);

/// Known part of the data-matrix column of order m implied by the spectrum:
/// inverts the per-order triangular system stacking the c_{lm} coefficient
/// rows over powers 0 .. band-1-|m|. The table must match fhat's band.
Eigen::VectorXcd column_from_spectrum(const SpectrumTriangle& fhat, int m,
                                      const PolyCoeffTable& table);

/// Triangular data matrix from a spectrum (the linear map is one-to-one).
DataMatrix spectrum_to_data_matrix(const SpectrumTriangle& fhat, const PolyCoeffTable& table);
DataMatrix spectrum_to_data_matrix(const SpectrumTriangle& fhat);

/// Spectrum from the triangular part: fhat_l^m = c_{lm}^T Delta e_m.
SpectrumTriangle data_matrix_to_spectrum(const DataMatrix& d, const PolyCoeffTable& table);
SpectrumTriangle data_matrix_to_spectrum(const DataMatrix& d);

}  // namespace sphfri
