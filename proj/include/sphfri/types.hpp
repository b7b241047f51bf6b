#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sphfri {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Base class for all recoverable numerical failures in the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested spike count exceeds what the available bandwidth supports.
class BandwidthTooSmall : public Error {
public:
  BandwidthTooSmall(const std::string& what, int minimal_band)
      : Error(what), minimal_band(minimal_band) {}
  int minimal_band;
};

/// A least-squares system lost rank (e.g. a pathological sampling point draw).
class RankDeficient : public Error {
public:
  RankDeficient(const std::string& what, int band, Eigen::Index samples, double condition)
      : Error(what), band(band), samples(samples), condition(condition) {}
  int band;
  Eigen::Index samples;
  double condition;
};

/// A kernel band is too small to divide by; lists the offending degrees.
class NonInvertibleKernel : public Error {
public:
  NonInvertibleKernel(const std::string& what, std::vector<int> bad_degrees)
      : Error(what), bad_degrees(std::move(bad_degrees)) {}
  std::vector<int> bad_degrees;
};

/// Spike configuration that the annihilation step cannot separate
/// (coincident colatitudes, count mismatch, rank collapse).
class DegenerateConfiguration : public Error {
public:
  using Error::Error;
};

/// Filter roots left the real interval [-1, 1]; the estimate is unreliable.
class UnreliableRoots : public Error {
public:
  using Error::Error;
};

/// A spike sits on a pole where the azimuth carries no information.
class UnrecoverableAzimuth : public Error {
public:
  using Error::Error;
};

/// Location on the unit sphere: colatitude from +z, azimuth from +x in the
/// xy-plane. The constructor wraps phi into [0, 2*pi) and clamps colatitudes
/// that exceed [0, pi] by at most 1e-9 (inverse-trig jitter); anything farther
/// out is rejected.
struct SphericalPoint {
  double theta{0.0};
  double phi{0.0};

  SphericalPoint() = default;
  SphericalPoint(double theta_in, double phi_in);
};

/// Wraps an angle into [0, 2*pi).
double wrap_azimuth(double phi);

/// Folds an arbitrary (theta, phi) pair onto the canonical chart
/// theta in [0, pi], phi in [0, 2*pi). Used by local search, which may step
/// outside the chart.
SphericalPoint canonical_direction(double theta, double phi);

Eigen::Vector3d sph_to_cart(const SphericalPoint& p);
SphericalPoint cart_to_sph(const Eigen::Vector3d& v);

/// Great-circle (geodesic) distance between two points, in radians.
double great_circle(const SphericalPoint& a, const SphericalPoint& b);

/// One weighted spike.
struct Spike {
  Complex amplitude;
  SphericalPoint location;
};

/// A collection of weighted spikes; the recovery target.
struct DiracEnsemble {
  std::vector<Spike> spikes;

  int size() const { return static_cast<int>(spikes.size()); }
};

/// Throws if the ensemble is empty or two spikes coincide.
void validate_ensemble(const DiracEnsemble& f);

/// Complex expansion coefficients over the triangular index set
/// {(l, m) : 0 <= l < band, |m| <= l}, flattened in the order
/// (0,0), (1,-1), (1,0), (1,1), ... so that (l, m) sits at l*l + l + m.
class SpectrumTriangle {
public:
  explicit SpectrumTriangle(int band)
      : band_(band), coeffs_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(band) * band)) {
    if (band < 1) throw Error("SpectrumTriangle: band must be >= 1");
  }
  SpectrumTriangle(int band, Eigen::VectorXcd coeffs) : band_(band), coeffs_(std::move(coeffs)) {
    if (band < 1) throw Error("SpectrumTriangle: band must be >= 1");
    if (coeffs_.size() != static_cast<Eigen::Index>(band) * band)
      throw Error("SpectrumTriangle: coefficient vector must have band^2 entries");
  }

  int band() const { return band_; }

  static Eigen::Index index(int l, int m) {
    return static_cast<Eigen::Index>(l) * l + l + m;
  }

  Complex operator()(int l, int m) const { return coeffs_(index(l, m)); }
  Complex& operator()(int l, int m) { return coeffs_(index(l, m)); }

  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Eigen::VectorXcd& coeffs() { return coeffs_; }

private:
  int band_;
  Eigen::VectorXcd coeffs_;
};

}  // namespace sphfri
