// oracle.hpp - Brute-force reference: evolves the full pair + bath pure state
// exactly and traces out the bath. Exponential in the bath size; meant for
// validating the analytic formulas at small N.
//
// Full-state layout: amplitude index = pair_index * 2^M + bath_bits, where
// M is the total number of bath spins, bath spin k is bit k of bath_bits and
// a set bit means spin down. For two separate baths the spins of bath 1 come
// first, then those of bath 2.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spinbath/density.hpp"
#include "spinbath/types.hpp"

namespace spinbath::oracle {

/// Pair plus bath qubits allowed in one dense state vector.
inline constexpr std::size_t kMaxQubits = 24;

struct FullState {
  std::vector<cplx> amplitudes;
  std::size_t bath_spins = 0;

  std::size_t bath_dim() const { return std::size_t{1} << bath_spins; }
};

/// Product state of the bath spins, each up amplitude multiplied by
/// exp(-i E_k t) and each down amplitude by exp(+i E_k t), where E_k is the
/// per-spin energy (in frequency units) for the current central branch.
inline std::vector<cplx> evolved_bath_state(const std::vector<BathSpin>& spins,
                                            const std::vector<double>& energies, double t) {
  std::vector<cplx> state(std::size_t{1} << spins.size());
  state[0] = 1.0;
  std::size_t filled = 1;
  for (std::size_t k = 0; k < spins.size(); ++k) {
    const cplx up = spins[k].alpha() * std::polar(1.0, -energies[k] * t);
    const cplx down = spins[k].beta() * std::polar(1.0, energies[k] * t);
    for (std::size_t b = 0; b < filled; ++b) {
      state[b | filled] = state[b] * down;
      state[b] *= up;
    }
    filled <<= 1;
  }
  return state;
}

namespace detail {

// sigma_z eigenvalue of central spin `which` (0 or 1) in pair branch p.
inline double central_sign(int p, int which) {
  const int bit = which == 0 ? (p >> 1) & 1 : p & 1;
  return bit == 0 ? 1.0 : -1.0;
}

struct FlatBath {
  std::vector<BathSpin> spins;
  // Per-spin coupling to central spin 1 and 2.
  std::vector<double> w1;
  std::vector<double> w2;
};

inline FlatBath flatten(const Environment& env) {
  FlatBath flat;
  if (const auto* sep = std::get_if<SeparateBaths>(&env)) {
    for (const auto& s : sep->bath1.spins()) {
      flat.spins.push_back(s);
      flat.w1.push_back(s.omega());
      flat.w2.push_back(0.0);
    }
    for (const auto& s : sep->bath2.spins()) {
      flat.spins.push_back(s);
      flat.w1.push_back(0.0);
      flat.w2.push_back(s.omega());
    }
  } else {
    for (const auto& s : std::get<CommonBath>(env).bath.spins()) {
      flat.spins.push_back(s);
      flat.w1.push_back(s.omega());
      flat.w2.push_back(*s.omega2());
    }
  }
  return flat;
}

}  // namespace detail

/// Exact state at time t of |psi> (x) |bath(0)> under the pure-dephasing
/// Hamiltonian sum_k (w_1k c_1z + w_2k c_2z) sigma_kz (hbar = 1).
inline FullState evolve_full_state(const PairState& psi, const Environment& env, double t) {
  const auto flat = detail::flatten(env);
  const std::size_t m = flat.spins.size();
  if (m + 2 > kMaxQubits) {
    throw ResourceLimitError("oracle: " + std::to_string(m + 2) + " qubits exceeds the budget of " +
                             std::to_string(kMaxQubits));
  }
  FullState out;
  out.bath_spins = m;
  const std::size_t dim = out.bath_dim();
  out.amplitudes.assign(4 * dim, cplx{0.0, 0.0});
  std::vector<double> energies(m);
  for (int p = 0; p < 4; ++p) {
    if (psi[p] == cplx{0.0, 0.0}) continue;
    const double c1 = detail::central_sign(p, 0);
    const double c2 = detail::central_sign(p, 1);
    for (std::size_t k = 0; k < m; ++k) energies[k] = flat.w1[k] * c1 + flat.w2[k] * c2;
    const auto branch = evolved_bath_state(flat.spins, energies, t);
    for (std::size_t b = 0; b < dim; ++b) out.amplitudes[p * dim + b] = psi[p] * branch[b];
  }
  return out;
}

/// rho_pq = sum_b psi(p, b) conj(psi(q, b)).
inline DensityMatrix4 partial_trace_pair(std::span<const cplx> state) {
  const std::size_t n = state.size();
  if (n < 4 || n % 4 != 0 || ((n / 4) & (n / 4 - 1)) != 0) {
    throw std::invalid_argument("partial_trace_pair: dimension " + std::to_string(n) +
                                " is not 4 * 2^m");
  }
  const std::size_t dim = n / 4;
  Matrix4 rho = Matrix4::Zero();
  for (int p = 0; p < 4; ++p) {
    for (int q = p; q < 4; ++q) {
      cplx acc{0.0, 0.0};
      const cplx* a = state.data() + p * dim;
      const cplx* b = state.data() + q * dim;
      for (std::size_t i = 0; i < dim; ++i) acc += a[i] * std::conj(b[i]);
      rho(p, q) = acc;
      rho(q, p) = std::conj(acc);
    }
  }
  return DensityMatrix4(rho);
}

inline DensityMatrix4 partial_trace_pair(const FullState& s) {
  return partial_trace_pair(std::span<const cplx>(s.amplitudes));
}

/// <Psi(-t)|Psi(+t)> for a separate bath, i.e. the overlap of the bath
/// branches attached to central spin up and down.
inline cplx bath_overlap(const Bath& bath, double t) {
  if (bath.is_common()) throw std::invalid_argument("bath_overlap: common bath");
  std::vector<double> w;
  for (const auto& s : bath.spins()) w.push_back(s.omega());
  const auto plus = evolved_bath_state(bath.spins(), w, t);
  const auto minus = evolved_bath_state(bath.spins(), w, -t);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < plus.size(); ++i) acc += std::conj(minus[i]) * plus[i];
  return acc;
}

/// Largest entrywise deviation between the analytic reduced matrix and the
/// partial trace of the exactly evolved state.
inline double max_deviation(const PairState& psi, const Environment& env, double t) {
  return rho_at(psi, env, t).max_abs_diff(partial_trace_pair(evolve_full_state(psi, env, t)));
}

}  // namespace spinbath::oracle
