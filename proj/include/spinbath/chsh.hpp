// chsh.hpp - CHSH correlators for spin measurements in the x-z plane, the
// S combination evaluated on a density matrix, and its closed forms for
// Bell states under dephasing.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

#include "spinbath/types.hpp"

namespace spinbath {

/// Measurement directions (theta1, theta2) and their primed alternatives.
struct AngleSet {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta1p = 0.0;
  double theta2p = 0.0;
};

/// theta1 = 0, theta2 = pi/4, theta1' = pi/2, theta2' = 3pi/4; A = B = sqrt 2.
inline AngleSet canonical_angles() { return {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}; }

/// cos(theta) sigma_z + sin(theta) sigma_x.
inline Matrix2 measurement_operator(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2 m;
  m << c, s, s, -c;
  return m;
}

/// Imaginary residue allowed in a correlator before it counts as a bug.
inline constexpr double kCorrelatorImagTol = 1e-9;
/// Slack on the Tsirelson bound |S| <= 2 sqrt 2.
inline constexpr double kTsirelsonSlack = 1e-9;

/// E(theta1, theta2) = Tr{ c1(theta1) (x) c2(theta2) rho }.
inline double correlator(double theta1, double theta2, const DensityMatrix4& rho) {
  const Matrix4 op =
      Eigen::kroneckerProduct(measurement_operator(theta1), measurement_operator(theta2));
  const cplx e = (op * rho.matrix()).trace();
  if (std::abs(e.imag()) > kCorrelatorImagTol) {
    throw ConsistencyError("correlator: imaginary part " + std::to_string(e.imag()));
  }
  return e.real();
}

/// S = E(t1, t2) - E(t1, t2') + E(t1', t2') + E(t1', t2).
inline double chsh_S(const AngleSet& a, const DensityMatrix4& rho) {
  const double s = correlator(a.theta1, a.theta2, rho) - correlator(a.theta1, a.theta2p, rho) +
                   correlator(a.theta1p, a.theta2p, rho) + correlator(a.theta1p, a.theta2, rho);
  if (std::abs(s) > 2.0 * kSqrt2 + kTsirelsonSlack) {
    throw ConsistencyError("chsh_S: |S| = " + std::to_string(std::abs(s)) +
                           " exceeds the Tsirelson bound");
  }
  return s;
}

struct ABCoefficients {
  double A = 0.0;
  double B = 0.0;
};

/// A collects the cos-cos terms of S, B the sin-sin terms.
inline ABCoefficients ab_coefficients(const AngleSet& a) {
  using std::cos;
  using std::sin;
  return {cos(a.theta1) * cos(a.theta2) - cos(a.theta1) * cos(a.theta2p) +
              cos(a.theta1p) * cos(a.theta2p) + cos(a.theta1p) * cos(a.theta2),
          sin(a.theta1) * sin(a.theta2) - sin(a.theta1) * sin(a.theta2p) +
              sin(a.theta1p) * sin(a.theta2p) + sin(a.theta1p) * sin(a.theta2)};
}

enum class Scenario { TwoBath, Common };

/// S_i for Bell state i:
///   S1 = A + B x_par,  S2 = -A + B x_anti,  S3 = A - B x_par,  S4 = -A - B x_anti
/// with x_par = Re{r1 r2}, x_anti = Re{r1 r2*} for two baths and
/// x_par = Re{r12+}, x_anti = Re{r12-} for a common bath.
inline double chsh_closed_form(int bell_index, Scenario scenario, const AngleSet& angles,
                               const DecoherenceFactors& f) {
  require_bell_index(bell_index);
  double parallel = 0.0;
  double antiparallel = 0.0;
  if (scenario == Scenario::TwoBath) {
    if (f.r12_plus || f.r12_minus) {
      throw std::invalid_argument("chsh_closed_form: two-bath scenario given common-bath factors");
    }
    parallel = (f.r1 * f.r2).real();
    antiparallel = (f.r1 * std::conj(f.r2)).real();
  } else {
    if (!f.is_common()) {
      throw std::invalid_argument("chsh_closed_form: common scenario requires r12+ and r12-");
    }
    parallel = f.r12_plus->real();
    antiparallel = f.r12_minus->real();
  }
  const auto [A, B] = ab_coefficients(angles);
  switch (bell_index) {
    case 1: return A + B * parallel;
    case 2: return -A + B * antiparallel;
    case 3: return A - B * parallel;
    default: return -A - B * antiparallel;
  }
}

}  // namespace spinbath
