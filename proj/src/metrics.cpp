#include "sphfri/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace sphfri {

namespace {

// Minimum-cost perfect assignment, Hungarian algorithm with potentials.
// Returns column assigned to each row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assignment(n);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) assignment[p[j] - 1] = j - 1;
  return assignment;
}

std::vector<int> exhaustive(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(n), best(n);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += cost(i, perm[i]);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double wrap_to_pi(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}

}  // namespace

MatchMetrics match_and_mse(const DiracEnsemble& truth, const DiracEnsemble& est) {
  const int k = truth.size();
  if (k == 0 || est.size() != k)
    throw Error("match_and_mse: spike counts differ (" + std::to_string(k) + " vs " +
                std::to_string(est.size()) + ")");

  Eigen::MatrixXd cost(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      cost(i, j) = great_circle(truth.spikes[i].location, est.spikes[j].location);

  MatchMetrics out;
  out.assignment = (k <= 6) ? exhaustive(cost) : hungarian(cost);
  out.mse_greatcircle = 0.0;
  out.mse_theta_phi = 0.0;
  out.mse_amplitude = 0.0;
  out.max_greatcircle = 0.0;
  out.max_relative_amplitude = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto& t = truth.spikes[i];
    const auto& e = est.spikes[out.assignment[i]];
    const double gc = cost(i, out.assignment[i]);
    out.mse_greatcircle += gc * gc;
    out.max_greatcircle = std::max(out.max_greatcircle, gc);
    const double dtheta = e.location.theta - t.location.theta;
    const double dphi = wrap_to_pi(e.location.phi - t.location.phi);
    out.mse_theta_phi += dtheta * dtheta + dphi * dphi;
    const double da = std::abs(e.amplitude - t.amplitude);
    out.mse_amplitude += da * da;
    out.max_relative_amplitude =
        std::max(out.max_relative_amplitude, da / std::abs(t.amplitude));
  }
  out.mse_greatcircle /= k;
  out.mse_theta_phi /= k;
  out.mse_amplitude /= k;
  return out;
}

}  // namespace sphfri
