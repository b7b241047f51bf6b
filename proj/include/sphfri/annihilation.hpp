#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sphfri/data_matrix.hpp"
#include "sphfri/types.hpp"

namespace sphfri {

/// FIR filter h_0..h_K whose K roots are the cos(theta_k) of the spikes;
/// convolving it with any column of the data matrix gives zero.
struct AnnihilatingFilter {
  Eigen::VectorXcd taps;  // unit Euclidean norm

  int spike_count() const { return static_cast<int>(taps.size()) - 1; }
};

/// Direct construction from known roots, normalized to unit norm.
AnnihilatingFilter filter_from_roots(const std::vector<double>& roots);

/// All length-(K+1) descending-power windows from the given columns
/// (each column over increasing powers 0..len-1). Columns shorter than
/// K+1 contribute nothing.
Eigen::MatrixXcd annihilation_rows(const std::vector<Eigen::VectorXcd>& columns, int spike_count);

/// Annihilating matrix of a triangular data matrix: windows from the known
/// columns in the order m = 0, -1, +1, -2, +2, ...; exactly (L-K)^2 rows.
/// Throws BandwidthTooSmall unless (L-K)^2 >= K.
Eigen::MatrixXcd build_annihilating_matrix(const DataMatrix& d, int spike_count);

/// Filter as the right singular vector of Z for the smallest singular value.
/// Throws DegenerateConfiguration if Z has fewer than K rows or its numerical
/// rank drops below K (relative `rank_tolerance`).
AnnihilatingFilter solve_annihilating_filter(const Eigen::MatrixXcd& z,
                                             double rank_tolerance = 1e-8);

/// Colatitudes arccos(roots(h)), sorted ascending. Roots come from the
/// companion-matrix eigenvalues; imaginary parts below
/// imag_tolerance * (1 + |Re|) are discarded and real parts within
/// real_tolerance of [-1, 1] are clamped. Anything farther out signals an
/// unreliable recovery. The tight defaults suit exact data; noisy callers
/// must widen them to their own perturbation scale.
std::vector<double> filter_roots_to_colatitudes(const AnnihilatingFilter& h,
                                                double imag_tolerance = 1e-6,
                                                double real_tolerance = 1e-6);

}  // namespace sphfri
