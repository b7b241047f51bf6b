#include "sphfri/bessel.hpp"

#include <cmath>

namespace sphfri {

Eigen::VectorXd bessel_j_array(int lmax, double x) {
  if (lmax < 0) throw Error("bessel_j_array: negative order");
  if (x < 0.0) throw Error("bessel_j_array: negative argument");
  Eigen::VectorXd j = Eigen::VectorXd::Zero(lmax + 1);
  if (x == 0.0) {
    j(0) = 1.0;
    return j;
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (lmax == 0) {
    j(0) = j0;
    return j;
  }

  const int start = std::max(lmax, static_cast<int>(std::ceil(x))) + 20 +
                    static_cast<int>(std::ceil(std::sqrt(40.0 * std::max(1, lmax))));
  double fp1 = 0.0, f = 1e-30;
  for (int l = start; l >= 0; --l) {
    const double fm1 = (2.0 * l + 3.0) / x * f - fp1;
    fp1 = f;
    f = fm1;
    if (l <= lmax) j(l) = f;
    if (std::abs(f) > 1e250) {  // rescale before the unnormalized pass overflows
      f *= 1e-250;
      fp1 *= 1e-250;
      j *= 1e-250;  // unfilled entries are zero; filled ones live above l
    }
  }
  // normalize against whichever closed form carries the larger magnitude
  const double scale = (std::abs(j(0)) >= std::abs(lmax >= 1 ? j(1) : 0.0))
                           ? j0 / j(0)
                           : j1 / j(1);
  j *= scale;
  return j;
}

Eigen::VectorXd bessel_y_array(int lmax, double x) {
  if (lmax < 0) throw Error("bessel_y_array: negative order");
  if (!(x > 0.0)) throw Error("bessel_y_array: argument must be positive");
  Eigen::VectorXd y(lmax + 1);
  y(0) = -std::cos(x) / x;
  if (lmax >= 1) y(1) = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 2; l <= lmax; ++l) {
    y(l) = (2.0 * l - 1.0) / x * y(l - 1) - y(l - 2);
    if (std::abs(y(l)) > 1e280)
      throw Error("bessel_y_array: overflow at order " + std::to_string(l) + ", argument " +
                  std::to_string(x));
  }
  return y;
}

BesselValue spherical_bessel(BesselKind kind, int l, double x) {
  if (l < 0) throw Error("spherical_bessel: negative order");
  const int top = l + 1;

  if (kind == BesselKind::j && x == 0.0)
    return {Complex(l == 0 ? 1.0 : 0.0, 0.0), Complex(l == 1 ? 1.0 / 3.0 : 0.0, 0.0)};

  const auto derivative = [&](const Eigen::VectorXd& f) {
    return (l == 0) ? -f(1) : f(l - 1) - (l + 1.0) / x * f(l);
  };

  switch (kind) {
    case BesselKind::j: {
      const Eigen::VectorXd j = bessel_j_array(top, x);
      return {Complex(j(l), 0.0), Complex(derivative(j), 0.0)};
    }
    case BesselKind::y: {
      const Eigen::VectorXd y = bessel_y_array(top, x);
      return {Complex(y(l), 0.0), Complex(derivative(y), 0.0)};
    }
    case BesselKind::h1: {
      const Eigen::VectorXd j = bessel_j_array(top, x);
      const Eigen::VectorXd y = bessel_y_array(top, x);
      return {Complex(j(l), y(l)), Complex(derivative(j), derivative(y))};
    }
  }
  throw Error("spherical_bessel: unknown kind");
}

Complex mode_strength(int l, double x) {
  if (!(x > 0.0)) throw Error("mode_strength: argument must be positive");
  const BesselValue j = spherical_bessel(BesselKind::j, l, x);
  const BesselValue h = spherical_bessel(BesselKind::h1, l, x);
  if (std::abs(h.derivative) == 0.0)
    throw Error("mode_strength: Hankel derivative vanished unexpectedly");
  return j.value - j.derivative / h.derivative * h.value;
}

}  // namespace sphfri
