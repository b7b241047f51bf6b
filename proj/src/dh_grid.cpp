#include "sphfri/dh_grid.hpp"

#include <cmath>

#include "sphfri/harmonics.hpp"
#include "sphfri/legendre.hpp"

namespace sphfri {

DHGrid dh_grid(int band) {
  if (band < 1) throw Error("dh_grid: band must be >= 1");
  const int rings = 2 * band;
  Eigen::MatrixXd v(rings, rings);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rings);
  for (int p = 0; p < rings; ++p) {
    const double x = std::cos(p * kPi / rings);
    for (int l = 0; l < rings; ++l) v(l, p) = legendre_p(l, x);
  }
  rhs(0) = 2.0;  // integral of P_0 over [-1, 1]
  Eigen::VectorXd a = v.fullPivLu().solve(rhs);
  a *= kPi / band;  // azimuthal DFT contributes 2L' per matching order
  return DHGrid(band, std::move(a));
}

SpectrumTriangle dh_spectrum(const DHGrid& grid, const Eigen::VectorXcd& values, int band) {
  if (band < 1 || band > grid.band())
    throw Error("dh_spectrum: requested band must satisfy 1 <= band <= grid band");
  if (values.size() != grid.node_count())
    throw Error("dh_spectrum: expected " + std::to_string(grid.node_count()) +
                " node values, got " + std::to_string(values.size()));

  SpectrumTriangle fhat(band);
  const int rings = grid.rings();
  for (int p = 0; p < rings; ++p) {
    // Weighted azimuthal inner products against e^{-i m phi_q}, then the
    // colatitude factors N_l^m P_l^{|m|}(cos theta_p).
    Eigen::VectorXcd ring = values.segment(grid.node_index(p, 0), rings);
    const Eigen::VectorXcd ylm = harmonics_at(grid.node(p, 0), band);
    for (int m = -(band - 1); m <= band - 1; ++m) {
      Complex acc(0.0, 0.0);
      for (int q = 0; q < rings; ++q) acc += ring(q) * std::polar(1.0, -m * grid.phi(q));
      for (int l = std::abs(m); l < band; ++l)
        fhat(l, m) += grid.weight(p) * acc * std::conj(ylm(SpectrumTriangle::index(l, m)));
    }
  }
  return fhat;
}

}  // namespace sphfri
