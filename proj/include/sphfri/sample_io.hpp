#pragma once

#include <string>

#include "sphfri/dh_grid.hpp"
#include "sphfri/sampling.hpp"

namespace sphfri {

/// CSV with header "theta,phi,re,im"; angles in radians, '.' decimal separator.
void write_samples_csv(const SampleSet& s, const std::string& path);
SampleSet read_samples_csv(const std::string& path);

/// CSV with header "p,q,re,im" for values on an equiangular grid,
/// row-major (p outer, q inner).
void write_grid_values_csv(const DHGrid& grid, const Eigen::VectorXcd& values,
                           const std::string& path);
Eigen::VectorXcd read_grid_values_csv(const DHGrid& grid, const std::string& path);

/// CSV with header "alpha_re,alpha_im,theta,phi".
void write_ensemble_csv(const DiracEnsemble& f, const std::string& path);
DiracEnsemble read_ensemble_csv(const std::string& path);

}  // namespace sphfri
