// density.hpp - Reduced density matrix of the central pair under pure
// dephasing, for two separate baths or one common bath, and the spin-flip
// transform used by the concurrence.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spinbath/decoherence.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

namespace detail {

// Coherence multiplying a_p a_q^* in entry (p, q). Populations are untouched
// and the lower triangle is the conjugate of the upper one.
inline DensityMatrix4 assemble(const PairState& psi, const cplx (&upper)[4][4]) {
  Matrix4 m;
  for (int p = 0; p < 4; ++p) {
    m(p, p) = std::norm(psi[p]);
    for (int q = p + 1; q < 4; ++q) {
      m(p, q) = psi[p] * std::conj(psi[q]) * upper[p][q];
      m(q, p) = std::conj(m(p, q));
    }
  }
  return DensityMatrix4(m);
}

inline void check_factor(cplx r, const char* what) {
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(r) > 1.0 + 1e-12) {
    throw std::invalid_argument(std::string(what) + ": decoherence factor modulus exceeds 1");
  }
}

}  // namespace detail

/// Pair coupled to two independent baths with factors r1 (spin 1) and r2
/// (spin 2).
inline DensityMatrix4 rho_two_baths(const PairState& psi, cplx r1, cplx r2) {
  for (cplx r : {r1, r2}) detail::check_factor(r, "rho_two_baths");
  const cplx o{0.0, 0.0};
  const cplx upper[4][4] = {
      {o, r2, r1, r1 * r2},
      {o, o, r1 * std::conj(r2), r1},
      {o, o, o, r2},
      {o, o, o, o},
  };
  return detail::assemble(psi, upper);
}

/// Pair coupled to one shared bath. The (uu, dd) coherence carries r12+ and
/// the (ud, du) coherence carries r12-.
inline DensityMatrix4 rho_common_bath(const PairState& psi, cplx r1, cplx r2, cplx r12p,
                                      cplx r12m) {
  for (cplx r : {r1, r2, r12p, r12m}) detail::check_factor(r, "rho_common_bath");
  const cplx o{0.0, 0.0};
  const cplx upper[4][4] = {
      {o, r2, r1, r12p},
      {o, o, r12m, r1},
      {o, o, o, r2},
      {o, o, o, o},
  };
  return detail::assemble(psi, upper);
}

/// Builds rho from a factor set, dispatching on whether r12+- are present.
inline DensityMatrix4 rho_from_factors(const PairState& psi, const DecoherenceFactors& f) {
  if (f.is_common()) return rho_common_bath(psi, f.r1, f.r2, *f.r12_plus, *f.r12_minus);
  if (f.r12_plus || f.r12_minus) {
    throw std::invalid_argument("rho_from_factors: only one of r12+/r12- present");
  }
  return rho_two_baths(psi, f.r1, f.r2);
}

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
///
/// sigma_y x sigma_y is the real anti-diagonal matrix with entries
/// (-1, 1, 1, -1) from top-right to bottom-left, hence
/// flipped(i, j) = s_i s_j conj(rho(3-i, 3-j)).
inline DensityMatrix4 spin_flip(const DensityMatrix4& rho) {
  constexpr double s[4] = {-1.0, 1.0, 1.0, -1.0};
  Matrix4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(i, j) = s[i] * s[j] * std::conj(rho(3 - i, 3 - j));
    }
  }
  return DensityMatrix4(out);
}

// ---------------------------------------------------------------------------
// Environments and time sweeps
// ---------------------------------------------------------------------------

/// Two independent baths. A trivial second bath gives the one-coupled case.
struct SeparateBaths {
  Bath bath1;
  Bath bath2;
};

/// One bath shared by both central spins.
struct CommonBath {
  Bath bath;
};

using Environment = std::variant<SeparateBaths, CommonBath>;

inline SeparateBaths make_separate(Bath b1, Bath b2) {
  if (b1.is_common() || b2.is_common()) {
    throw std::invalid_argument("make_separate: common bath given");
  }
  return {std::move(b1), std::move(b2)};
}

inline CommonBath make_common(Bath b) {
  if (!b.is_common()) throw std::invalid_argument("make_common: separate bath given");
  return {std::move(b)};
}

inline DecoherenceFactors factors_at(const Environment& env, double t) {
  if (const auto* sep = std::get_if<SeparateBaths>(&env)) {
    return DecoherenceFactors::two_baths(factor_separate(sep->bath1, t),
                                         factor_separate(sep->bath2, t), t);
  }
  const auto& b = std::get<CommonBath>(env).bath;
  return DecoherenceFactors::common(factor_common_single(b, 1, t), factor_common_single(b, 2, t),
                                    factor_common_pm(b, Sign::Plus, t),
                                    factor_common_pm(b, Sign::Minus, t), t);
}

inline DensityMatrix4 rho_at(const PairState& psi, const Environment& env, double t) {
  return rho_from_factors(psi, factors_at(env, t));
}

inline std::vector<DensityMatrix4> rho_time_sweep(const PairState& psi, const Environment& env,
                                                  const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("rho_time_sweep: empty time grid");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("rho_time_sweep: time grid not sorted");
  }
  std::vector<DensityMatrix4> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(rho_at(psi, env, t));
  return out;
}

}  // namespace spinbath
