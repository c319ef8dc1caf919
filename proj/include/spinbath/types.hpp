// types.hpp - Value types shared across the library: bath spins, baths,
// central-pair states, 4x4 density matrices and decoherence factors.
//
// Basis convention used everywhere: {up-up, up-down, down-up, down-down},
// index p = 2*s1 + s2 with s = 0 for up and s = 1 for down.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spinbath {

using cplx = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Tolerance for rejecting non-normalized amplitudes at construction.
inline constexpr double kNormTol = 1e-9;
/// Entrywise Hermiticity and trace tolerance for density matrices.
inline constexpr double kDensityTol = 1e-12;
/// Eigenvalues above -kPsdTol are treated as round-off of a PSD matrix.
inline constexpr double kPsdTol = 1e-10;

/// Raised when a computed quantity violates an invariant that valid input
/// cannot break (e.g. an imaginary CHSH correlator). Maps to CLI exit code 3.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the brute-force oracle when the qubit budget is exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Bath spins and baths
// ---------------------------------------------------------------------------

/// One environmental spin-1/2: amplitudes on |up>, |down> and its coupling
/// frequency. `omega2` is the coupling to the second central spin and is
/// present only for spins of a common bath.
class BathSpin {
 public:
  BathSpin(cplx alpha, cplx beta, double omega,
           std::optional<double> omega2 = std::nullopt)
      : alpha_(alpha), beta_(beta), omega_(omega), omega2_(omega2) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTol) {
      throw std::invalid_argument("BathSpin: |alpha|^2 + |beta|^2 = " +
                                  std::to_string(n2) + ", expected 1");
    }
    if (!std::isfinite(omega) || (omega2 && !std::isfinite(*omega2))) {
      throw std::invalid_argument("BathSpin: coupling must be finite");
    }
    const double n = std::sqrt(n2);
    alpha_ /= n;
    beta_ /= n;
  }

  /// Spin pointing along the polar direction (theta, phi):
  /// alpha = cos(theta/2) e^{-i phi/2}, beta = sin(theta/2) e^{i phi/2}.
  static BathSpin from_angles(double theta, double phi, double omega,
                              std::optional<double> omega2 = std::nullopt) {
    if (!(theta >= 0.0 && theta <= kPi)) {
      throw std::invalid_argument("BathSpin::from_angles: theta outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi <= 2.0 * kPi)) {
      throw std::invalid_argument("BathSpin::from_angles: phi outside [0, 2pi]");
    }
    return BathSpin(std::polar(std::cos(theta / 2.0), -phi / 2.0),
                    std::polar(std::sin(theta / 2.0), phi / 2.0), omega, omega2);
  }

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  double omega() const { return omega_; }
  std::optional<double> omega2() const { return omega2_; }

  /// |alpha|^2, the weight of the up component.
  double up_weight() const { return std::norm(alpha_); }
  double down_weight() const { return std::norm(beta_); }

 private:
  cplx alpha_;
  cplx beta_;
  double omega_;
  std::optional<double> omega2_;
};

enum class BathLabel { Bath1, Bath2, Common };

inline std::string to_string(BathLabel label) {
  switch (label) {
    case BathLabel::Bath1: return "bath-1";
    case BathLabel::Bath2: return "bath-2";
    case BathLabel::Common: return "common";
  }
  return "unknown";
}

/// Ordered collection of bath spins. An empty bath must be requested via
/// `Bath::trivial`; it leaves the central spins uncoupled (r(t) = 1).
class Bath {
 public:
  Bath(std::vector<BathSpin> spins, BathLabel label)
      : spins_(std::move(spins)), label_(label) {
    if (spins_.empty()) {
      throw std::invalid_argument(
          "Bath: empty spin list (use Bath::trivial for an uncoupled bath)");
    }
    for (const auto& s : spins_) {
      const bool has2 = s.omega2().has_value();
      if (label_ == BathLabel::Common && !has2) {
        throw std::invalid_argument("Bath: common-bath spin without omega2");
      }
      if (label_ != BathLabel::Common && has2) {
        throw std::invalid_argument("Bath: separate-bath spin carries omega2");
      }
    }
  }

  static Bath trivial(BathLabel label) { return Bath(label); }

  const std::vector<BathSpin>& spins() const { return spins_; }
  std::size_t size() const { return spins_.size(); }
  bool empty() const { return spins_.empty(); }
  BathLabel label() const { return label_; }
  bool is_common() const { return label_ == BathLabel::Common; }

  /// Concatenation of two baths of the same kind.
  friend Bath concat(const Bath& a, const Bath& b) {
    if (a.is_common() != b.is_common()) {
      throw std::invalid_argument("concat: cannot mix common and separate baths");
    }
    std::vector<BathSpin> all = a.spins_;
    all.insert(all.end(), b.spins_.begin(), b.spins_.end());
    if (all.empty()) return Bath::trivial(a.label_);
    return Bath(std::move(all), a.label_);
  }

 private:
  explicit Bath(BathLabel label) : label_(label) {}

  std::vector<BathSpin> spins_;
  BathLabel label_;
};

// ---------------------------------------------------------------------------
// Central pair
// ---------------------------------------------------------------------------

/// Amplitudes (a_uu, a_ud, a_du, a_dd) of the two central spins.
class PairState {
 public:
  explicit PairState(const std::array<cplx, 4>& amplitudes) : a_(amplitudes) {
    double n2 = 0.0;
    for (const auto& x : a_) n2 += std::norm(x);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTol) {
      throw std::invalid_argument("PairState: squared norm " + std::to_string(n2) +
                                  ", expected 1");
    }
    const double n = std::sqrt(n2);
    for (auto& x : a_) x /= n;
  }

  const std::array<cplx, 4>& amplitudes() const { return a_; }
  cplx operator[](std::size_t i) const { return a_[i]; }

  Eigen::Vector4cd vector() const { return {a_[0], a_[1], a_[2], a_[3]}; }

  /// |psi><psi|
  Matrix4 projector() const {
    const Eigen::Vector4cd v = vector();
    return v * v.adjoint();
  }

 private:
  std::array<cplx, 4> a_;
};

/// <a|b>
inline cplx inner(const PairState& a, const PairState& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Bell states e1 = (uu + dd)/sqrt2, e2 = (ud + du)/sqrt2,
/// e3 = (uu - dd)/sqrt2, e4 = (ud - du)/sqrt2.
inline PairState make_bell_state(int index) {
  const double h = kInvSqrt2;
  switch (index) {
    case 1: return PairState({cplx{h}, cplx{0}, cplx{0}, cplx{h}});
    case 2: return PairState({cplx{0}, cplx{h}, cplx{h}, cplx{0}});
    case 3: return PairState({cplx{h}, cplx{0}, cplx{0}, cplx{-h}});
    case 4: return PairState({cplx{0}, cplx{h}, cplx{-h}, cplx{0}});
    default:
      throw std::invalid_argument("make_bell_state: index must be 1..4, got " +
                                  std::to_string(index));
  }
}

/// Checks a Bell index without building the state.
inline void require_bell_index(int index) {
  if (index < 1 || index > 4) {
    throw std::invalid_argument("Bell index must be 1..4, got " + std::to_string(index));
  }
}

// ---------------------------------------------------------------------------
// Density matrices and decoherence factors
// ---------------------------------------------------------------------------

/// 4x4 reduced density matrix of the central pair in the product basis.
/// Construction does not validate; call `validate()` where input is untrusted.
class DensityMatrix4 {
 public:
  DensityMatrix4() : m_(Matrix4::Zero()) {}
  explicit DensityMatrix4(const Matrix4& m) : m_(m) {}

  const Matrix4& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  cplx trace() const { return m_.trace(); }

  /// Eigenvalues in ascending order (Hermitian part).
  Eigen::Vector4d eigenvalues() const {
    const Matrix4 h = 0.5 * (m_ + m_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Matrix4>(h, Eigen::EigenvaluesOnly).eigenvalues();
  }

  /// Throws std::invalid_argument unless Hermitian, unit trace and PSD
  /// within the library tolerances.
  void validate(double tol = kDensityTol) const {
    if (!m_.allFinite()) throw std::invalid_argument("density matrix: non-finite entry");
    if (hermiticity_error() > tol) {
      throw std::invalid_argument("density matrix: not Hermitian");
    }
    if (std::abs(trace() - cplx{1.0}) > tol) {
      throw std::invalid_argument("density matrix: trace != 1");
    }
    if (eigenvalues()(0) < -kPsdTol) {
      throw std::invalid_argument("density matrix: negative eigenvalue");
    }
  }

  double max_abs_diff(const DensityMatrix4& other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

 private:
  Matrix4 m_;
};

/// Decoherence factors at one time. `r12_plus` / `r12_minus` are present
/// only for the common-bath scenario.
struct DecoherenceFactors {
  cplx r1{1.0, 0.0};
  cplx r2{1.0, 0.0};
  std::optional<cplx> r12_plus;
  std::optional<cplx> r12_minus;
  double time = 0.0;

  bool is_common() const { return r12_plus.has_value() && r12_minus.has_value(); }

  static DecoherenceFactors two_baths(cplx r1, cplx r2, double t = 0.0) {
    return {r1, r2, std::nullopt, std::nullopt, t};
  }
  static DecoherenceFactors common(cplx r1, cplx r2, cplx r12p, cplx r12m,
                                   double t = 0.0) {
    return {r1, r2, r12p, r12m, t};
  }
};

}  // namespace spinbath
