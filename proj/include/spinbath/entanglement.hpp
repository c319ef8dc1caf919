// entanglement.hpp - Two-qubit concurrence (general eigenvalue recipe and
// the closed forms of the dephasing model) and the entanglement entropy
// obtained from it.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spinbath/density.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

namespace detail {

/// Square root of a Hermitian PSD matrix through its spectral decomposition.
/// Eigenvalues in [-kPsdTol, 0) are clamped; anything lower is rejected.
inline Matrix4 psd_sqrt(const Matrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(rho);
  if (es.info() != Eigen::Success) throw ConsistencyError("psd_sqrt: eigensolver failed");
  Eigen::Vector4d mu = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (mu(i) < -kPsdTol) {
      throw std::invalid_argument("concurrence: density matrix is not positive semidefinite");
    }
    mu(i) = std::sqrt(std::max(mu(i), 0.0));
  }
  return es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
///
/// The spectrum of rho * rho~ equals that of sqrt(rho) rho~ sqrt(rho), which
/// is the Gram matrix of sqrt(rho~) sqrt(rho); the roots are therefore the
/// singular values of that product, with sqrt(rho~) = spin_flip(sqrt(rho)).
/// Working with singular values avoids squaring small roots.
inline std::array<double, 4> wootters_roots(const DensityMatrix4& rho) {
  rho.validate();
  const Matrix4 h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  const Matrix4 root = detail::psd_sqrt(h);
  const Matrix4 flipped_root = spin_flip(DensityMatrix4(root)).matrix();
  const Matrix4 product = flipped_root * root;
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4>(product).singularValues();
  return {sv(0), sv(1), sv(2), sv(3)};  // JacobiSVD sorts descending
}

/// Eigenvalues of rho * spin_flip(rho) in decreasing order.
inline std::array<double, 4> wootters_eigenvalues(const DensityMatrix4& rho) {
  auto r = wootters_roots(rho);
  for (auto& x : r) x *= x;
  return r;
}

/// max{0, s1 - s2 - s3 - s4} with s_i the decreasing square roots of the
/// eigenvalues of rho * spin_flip(rho). Throws std::invalid_argument for an
/// invalid density matrix.
inline double concurrence(const DensityMatrix4& rho) {
  const auto s = wootters_roots(rho);
  return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

/// C = |r1| |r2|, identical for all four Bell states.
inline double concurrence_closed_two_baths(cplx r1, cplx r2) {
  return std::abs(r1) * std::abs(r2);
}

/// C1 = C3 = |r12+| (parallel spins), C2 = C4 = |r12-| (antiparallel).
inline double concurrence_closed_common(int bell_index, cplx r12p, cplx r12m) {
  require_bell_index(bell_index);
  return (bell_index == 1 || bell_index == 3) ? std::abs(r12p) : std::abs(r12m);
}

/// h(x) = -x log2 x - (1-x) log2(1-x), h(0) = h(1) = 0.
inline double binary_entropy(double x) {
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

/// Entanglement entropy h((1 + sqrt(1 - c^2)) / 2) for concurrence c.
inline double entanglement_entropy_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("entanglement_entropy_from_concurrence: c outside [0, 1]");
  }
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

}  // namespace spinbath
