#include "sphfri/types.hpp"

#include <cmath>

namespace sphfri {

namespace {
constexpr double kPoleTolerance = 1e-9;
}

double wrap_azimuth(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

SphericalPoint::SphericalPoint(double theta_in, double phi_in) {
  if (theta_in < -kPoleTolerance || theta_in > kPi + kPoleTolerance)
    throw Error("SphericalPoint: colatitude " + std::to_string(theta_in) +
                " outside [0, pi]");
  theta = std::min(std::max(theta_in, 0.0), kPi);
  phi = wrap_azimuth(phi_in);
}

SphericalPoint canonical_direction(double theta, double phi) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t > kPi) {  // fold through the south pole
    t = kTwoPi - t;
    phi += kPi;
  }
  return SphericalPoint(t, phi);
}

Eigen::Vector3d sph_to_cart(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  return {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)};
}

SphericalPoint cart_to_sph(const Eigen::Vector3d& v) {
  const double r = v.norm();
  if (r == 0.0) throw Error("cart_to_sph: zero vector has no direction");
  const double theta = std::acos(std::min(std::max(v.z() / r, -1.0), 1.0));
  double phi = std::atan2(v.y(), v.x());
  return SphericalPoint(theta, wrap_azimuth(phi));
}

double great_circle(const SphericalPoint& a, const SphericalPoint& b) {
  const Eigen::Vector3d u = sph_to_cart(a);
  const Eigen::Vector3d v = sph_to_cart(b);
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

void validate_ensemble(const DiracEnsemble& f) {
  if (f.spikes.empty()) throw Error("ensemble must contain at least one spike");
  for (std::size_t i = 0; i < f.spikes.size(); ++i)
    for (std::size_t j = i + 1; j < f.spikes.size(); ++j)
      if (great_circle(f.spikes[i].location, f.spikes[j].location) == 0.0)
        throw Error("ensemble locations must be pairwise distinct");
}

}  // namespace sphfri
