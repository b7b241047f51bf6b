#include "sphfri/annihilation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sphfri {

AnnihilatingFilter filter_from_roots(const std::vector<double>& roots) {
  Eigen::VectorXcd taps = Eigen::VectorXcd::Zero(roots.size() + 1);
  taps(0) = 1.0;
  Eigen::Index degree = 0;
  for (const double r : roots) {
    // multiply by (1 - r z^{-1})
    ++degree;
    for (Eigen::Index j = degree; j >= 1; --j) taps(j) -= r * taps(j - 1);
  }
  taps.normalize();
  return {taps};
}

Eigen::MatrixXcd annihilation_rows(const std::vector<Eigen::VectorXcd>& columns,
                                   int spike_count) {
  const int k = spike_count;
  if (k < 1) throw Error("annihilation_rows: need at least one spike");
  Eigen::Index rows = 0;
  for (const auto& c : columns) rows += std::max<Eigen::Index>(0, c.size() - k);
  Eigen::MatrixXcd z(rows, k + 1);
  Eigen::Index r = 0;
  for (const auto& c : columns) {
    const Eigen::Index top = c.size() - 1;
    for (Eigen::Index t = 0; t + k <= top; ++t, ++r)
      for (int j = 0; j <= k; ++j) z(r, j) = c(top - t - j);
  }
  return z;
}

Eigen::MatrixXcd build_annihilating_matrix(const DataMatrix& d, int spike_count) {
  const int band = d.band();
  const int k = spike_count;
  if (k < 1) throw Error("build_annihilating_matrix: need at least one spike");
  const long capacity = static_cast<long>(band - k) * (band - k);
  if (band <= k || capacity < k) {
    const int minimal = k + static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
    throw BandwidthTooSmall("band " + std::to_string(band) + " too small for " +
                                std::to_string(k) + " spikes; need band >= " +
                                std::to_string(minimal),
                            minimal);
  }
  std::vector<Eigen::VectorXcd> columns;
  columns.push_back(d.known_column(0));
  for (int m = 1; m < band; ++m) {
    columns.push_back(d.known_column(-m));
    columns.push_back(d.known_column(m));
  }
  return annihilation_rows(columns, k);
}

AnnihilatingFilter solve_annihilating_filter(const Eigen::MatrixXcd& z, double rank_tolerance) {
  const int k = static_cast<int>(z.cols()) - 1;
  if (z.rows() < k)
    throw DegenerateConfiguration("annihilating matrix has " + std::to_string(z.rows()) +
                                  " rows, fewer than the " + std::to_string(k) +
                                  " needed for a one-dimensional nullspace");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(z, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(std::min<Eigen::Index>(k - 1, sv.size() - 1)) / sv(0) < rank_tolerance)
    throw DegenerateConfiguration(
        "annihilating matrix rank fell below the spike count (coincident colatitudes?)");
  AnnihilatingFilter h{svd.matrixV().col(k)};
  h.taps.normalize();
  return h;
}

std::vector<double> filter_roots_to_colatitudes(const AnnihilatingFilter& h,
                                                double imag_tolerance, double real_tolerance) {
  const int k = h.spike_count();
  if (k < 1) throw Error("filter must have at least two taps");
  const double scale = h.taps.cwiseAbs().maxCoeff();
  if (std::abs(h.taps(0)) < 1e-9 * scale)
    throw UnreliableRoots("annihilating filter has a vanishing leading tap");

  // companion matrix of z^K + (h_1/h_0) z^{K-1} + ... + h_K/h_0
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) companion(i, k - 1) = -h.taps(k - i) / h.taps(0);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
  std::vector<double> colatitudes;
  for (int i = 0; i < k; ++i) {
    const Complex root = eig.eigenvalues()(i);
    if (std::abs(root.imag()) >= imag_tolerance * (1.0 + std::abs(root.real())))
      throw UnreliableRoots("filter root " + std::to_string(root.real()) + " + " +
                            std::to_string(root.imag()) + "i is far from the real axis");
    double x = root.real();
    if (std::abs(x) > 1.0 + real_tolerance)
      throw UnreliableRoots("filter root " + std::to_string(x) + " lies outside [-1, 1]");
    x = std::min(std::max(x, -1.0), 1.0);
    colatitudes.push_back(std::acos(x));
  }
  std::sort(colatitudes.begin(), colatitudes.end());
  return colatitudes;
}

}  // namespace sphfri
