#include "sphfri/shot_noise.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "sphfri/annihilation.hpp"
#include "sphfri/data_matrix.hpp"
#include "sphfri/harmonics.hpp"
#include "sphfri/sampling.hpp"

namespace sphfri {

int max_correctable_corruptions(int band, int grid_band) {
  if (band < 1 || grid_band <= band)
    throw Error("max_correctable_corruptions: need 1 <= band < grid band");
  const int surplus = grid_band - band;
  int k = 0;
  while (static_cast<long>(surplus - (k + 1)) * (surplus - (k + 1) + 1) >= k + 1) ++k;
  return k;
}

namespace {

// High-band coefficients stacked as rows (l, m), L <= l < L'.
Eigen::VectorXcd high_band(const SpectrumTriangle& ghat, int band) {
  std::vector<Complex> rows;
  for (int l = band; l < ghat.band(); ++l)
    for (int m = -l; m <= l; ++m) rows.push_back(ghat(l, m));
  return Eigen::Map<const Eigen::VectorXcd>(rows.data(), rows.size());
}

}  // namespace

std::vector<Corruption> detect_shot_noise(const DHGrid& grid, const Eigen::VectorXcd& values,
                                          int band, int corruption_count) {
  const int grid_band = grid.band();
  if (band < 1 || band >= grid_band)
    throw Error("detect_shot_noise: need 1 <= band < grid band");
  if (values.size() != grid.node_count())
    throw Error("detect_shot_noise: wrong node value count");
  if (corruption_count < 0) throw Error("detect_shot_noise: negative corruption count");
  if (corruption_count > max_correctable_corruptions(band, grid_band))
    throw BandwidthTooSmall(
        "cannot correct " + std::to_string(corruption_count) + " corruptions at band " +
            std::to_string(band) + " on a band-" + std::to_string(grid_band) +
            " grid (capacity " +
            std::to_string(max_correctable_corruptions(band, grid_band)) + ")",
        grid_band);

  const SpectrumTriangle ghat = dh_spectrum(grid, values, grid_band);
  const Eigen::VectorXcd tail = high_band(ghat, band);

  if (corruption_count == 0) {
    if (tail.norm() > 1e-6 * (1.0 + ghat.coeffs().norm()))
      throw DegenerateConfiguration(
          "high-band energy present although zero corruptions were requested");
    return {};
  }

  // Data-matrix columns fed only by the corruptions: orders |m| >= band.
  const PolyCoeffTable table = poly_coeffs(grid_band);
  std::vector<Eigen::VectorXcd> columns;
  for (int m = band; m < grid_band; ++m) {
    columns.push_back(column_from_spectrum(ghat, m, table));
    columns.push_back(column_from_spectrum(ghat, -m, table));
  }
  const Eigen::MatrixXcd z = annihilation_rows(columns, corruption_count);
  const long surplus = grid_band - band;
  if (z.rows() != (surplus - corruption_count) * (surplus - corruption_count + 1))
    throw Error("internal: unexpected annihilation row count");

  // Exact data: the nullspace stays meaningful well below the generic rank
  // gate (near-pole rings attenuate as sin(theta)^|m| and the snapping plus
  // residual checks below validate the outcome).
  const AnnihilatingFilter h = solve_annihilating_filter(z, 1e-12);
  if ((z * h.taps).norm() > 1e-6 * std::max(1.0, z.norm()))
    throw DegenerateConfiguration(
        "annihilation residual above 1e-6; corruption count mismatch or degenerate layout");

  // Colatitudes snap to grid rings (excluding the p = 0 pole ring, where a
  // corruption is invisible to every |m| > 0 column).
  const std::vector<double> colatitudes = filter_roots_to_colatitudes(h, 0.01, 0.01);
  std::vector<int> ring(corruption_count);
  std::set<int> seen;
  for (int j = 0; j < corruption_count; ++j) {
    int p = static_cast<int>(std::lround(colatitudes[j] * 2.0 * grid_band / kPi));
    p = std::min(std::max(p, 1), 2 * grid_band - 1);
    if (!seen.insert(p).second)
      throw DegenerateConfiguration("two corruptions snapped to the same grid ring");
    ring[j] = p;
  }

  // Azimuth phases from the two lowest usable orders, then snap to columns.
  Eigen::MatrixXcd vandermonde(grid_band, corruption_count);
  for (int j = 0; j < corruption_count; ++j) {
    const double x = std::cos(grid.theta(ring[j]));
    double xp = 1.0;
    for (int p = 0; p < grid_band; ++p, xp *= x) vandermonde(p, j) = xp;
  }
  const auto fit_column = [&](int m) {
    const Eigen::VectorXcd col = columns[2 * (std::abs(m) - band) + (m < 0 ? 1 : 0)];
    return vandermonde.topRows(col.size()).colPivHouseholderQr().solve(col).eval();
  };
  const Eigen::VectorXcd v_lo = fit_column(band);
  const Eigen::VectorXcd v_hi = fit_column(band + 1);

  std::vector<int> col(corruption_count);
  for (int j = 0; j < corruption_count; ++j) {
    const double phi = wrap_azimuth(std::arg(v_lo(j) / v_hi(j)));
    const int q = static_cast<int>(std::lround(phi * grid_band / kPi)) % (2 * grid_band);
    col[j] = q;
  }

  // Corruption values from the high band at the snapped nodes, weighted by
  // the ring quadrature weights.
  Eigen::MatrixXcd basis(tail.size(), corruption_count);
  for (int j = 0; j < corruption_count; ++j) {
    const Eigen::VectorXcd ylm = harmonics_at(grid.node(ring[j], col[j]), grid_band);
    Eigen::Index r = 0;
    for (int l = band; l < grid_band; ++l)
      for (int m = -l; m <= l; ++m, ++r)
        basis(r, j) = std::conj(ylm(SpectrumTriangle::index(l, m)));
  }
  const Eigen::VectorXcd weighted = basis.colPivHouseholderQr().solve(tail);
  if ((basis * weighted - tail).norm() > 1e-6 * std::max(1.0, tail.norm()))
    throw DegenerateConfiguration(
        "high-band fit residual above 1e-6 after snapping; corruption layout is degenerate");

  std::vector<Corruption> corruptions;
  for (int j = 0; j < corruption_count; ++j)
    corruptions.push_back({ring[j], col[j], weighted(j) / grid.weight(ring[j])});
  std::sort(corruptions.begin(), corruptions.end(), [&](const auto& a, const auto& b) {
    return grid.node_index(a.p, a.q) < grid.node_index(b.p, b.q);
  });
  return corruptions;
}

ShotNoiseRepair remove_shot_noise(const DHGrid& grid, const Eigen::VectorXcd& values, int band,
                                  int corruption_count) {
  ShotNoiseRepair repair{detect_shot_noise(grid, values, band, corruption_count), values,
                         SpectrumTriangle(band)};
  for (const auto& c : repair.corruptions)
    repair.corrected(grid.node_index(c.p, c.q)) -= c.value;

  const SpectrumTriangle full = dh_spectrum(grid, repair.corrected, grid.band());
  const double leftover = high_band(full, band).norm();
  if (leftover > 1e-8 * (1.0 + full.coeffs().norm()))
    throw DegenerateConfiguration("corrected samples still carry high-band energy (" +
                                  std::to_string(leftover) + ")");
  for (int l = 0; l < band; ++l)
    for (int m = -l; m <= l; ++m) repair.spectrum(l, m) = full(l, m);
  return repair;
}

SpectrumTriangle spectrum_ignoring_nodes(const DHGrid& grid, const Eigen::VectorXcd& values,
                                         int band,
                                         const std::vector<std::pair<int, int>>& skip) {
  if (values.size() != grid.node_count())
    throw Error("spectrum_ignoring_nodes: wrong node value count");
  std::set<Eigen::Index> skipped;
  for (const auto& [p, q] : skip) skipped.insert(grid.node_index(p, q));
  SampleSet kept;
  for (int p = 0; p < grid.rings(); ++p)
    for (int q = 0; q < grid.rings(); ++q) {
      const Eigen::Index idx = grid.node_index(p, q);
      if (skipped.count(idx)) continue;
      kept.points.push_back(grid.node(p, q));
    }
  kept.values.resize(static_cast<Eigen::Index>(kept.points.size()));
  Eigen::Index n = 0;
  for (int p = 0; p < grid.rings(); ++p)
    for (int q = 0; q < grid.rings(); ++q) {
      const Eigen::Index idx = grid.node_index(p, q);
      if (!skipped.count(idx)) kept.values(n++) = values(idx);
    }
  return spectrum_from_samples(kept, band);
}

}  // namespace sphfri
