// envelope.hpp - Least-squares fit of a Gaussian decay exp(-a t^2) to a
// sampled modulus curve.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace spinbath {

/// Points with modulus below this are outside the fit window.
inline const double kEnvelopeFloor = std::exp(-4.0);

struct EnvelopeFit {
  double a_hat = 0.0;
  /// max |m_i - exp(-a_hat t_i^2)| over the window.
  double max_residual = 0.0;
  std::size_t window = 0;
};

/// Fits -ln(m) = a t^2 through the origin over the fit window: the leading
/// run of samples (in input order) whose modulus is at least exp(-4).
/// Later revivals above the floor are ignored.
inline EnvelopeFit fit_gaussian_envelope(std::span<const double> times,
                                         std::span<const double> moduli) {
  if (times.size() != moduli.size()) {
    throw std::invalid_argument("fit_gaussian_envelope: times and moduli differ in length");
  }
  for (double m : moduli) {
    if (!(m >= 0.0 && m <= 1.0 + 1e-12)) {
      throw std::invalid_argument("fit_gaussian_envelope: modulus outside [0, 1]");
    }
  }
  std::size_t n = 0;
  double num = 0.0;
  double den = 0.0;
  while (n < times.size() && moduli[n] >= kEnvelopeFloor) {
    const double t2 = times[n] * times[n];
    num += t2 * -std::log(moduli[n]);
    den += t2 * t2;
    ++n;
  }
  if (n < 3 || den <= 0.0) {
    throw std::invalid_argument("fit_gaussian_envelope: fewer than 3 usable points in the window");
  }
  EnvelopeFit fit;
  fit.a_hat = num / den;
  fit.window = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double model = std::exp(-fit.a_hat * times[i] * times[i]);
    fit.max_residual = std::max(fit.max_residual, std::abs(moduli[i] - model));
  }
  return fit;
}

}  // namespace spinbath
