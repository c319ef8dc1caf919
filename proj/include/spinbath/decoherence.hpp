// decoherence.hpp - Complex decoherence factors of a dephasing spin bath and
// the rate of their short-time Gaussian decay.
//
// Every factor is a product over bath spins of
//     |alpha_k|^2 exp(-2i w_k t) + |beta_k|^2 exp(+2i w_k t)
// for an effective frequency w_k chosen by the scenario.

#pragma once

#include <complex>
#include <stdexcept>

#include "spinbath/types.hpp"

namespace spinbath {

/// Which per-spin frequency enters a factor or rate.
///   Coupling    w_k (separate bath) or w_1k (common bath)
///   Coupling2   w_2k (common bath only)
///   Sum         w_1k + w_2k (common bath only)
///   Difference  w_1k - w_2k (common bath only)
enum class FrequencySelector { Coupling, Coupling2, Sum, Difference };

enum class Sign { Plus, Minus };

namespace detail {

inline double effective_frequency(const BathSpin& s, FrequencySelector sel) {
  switch (sel) {
    case FrequencySelector::Coupling: return s.omega();
    case FrequencySelector::Coupling2: return *s.omega2();
    case FrequencySelector::Sum: return s.omega() + *s.omega2();
    case FrequencySelector::Difference: return s.omega() - *s.omega2();
  }
  return 0.0;
}

inline void check_selector(const Bath& bath, FrequencySelector sel) {
  if (sel != FrequencySelector::Coupling && !bath.is_common()) {
    throw std::invalid_argument("frequency selector requires a common bath");
  }
}

inline cplx factor_product(const Bath& bath, FrequencySelector sel, double t) {
  cplx r{1.0, 0.0};
  for (const auto& s : bath.spins()) {
    // p e^{-ix} + q e^{ix} with p + q = 1; exact 1 at x = 0.
    const double x = 2.0 * effective_frequency(s, sel) * t;
    r *= cplx{std::cos(x), (s.down_weight() - s.up_weight()) * std::sin(x)};
  }
  return r;
}

}  // namespace detail

/// r_n(t) for a bath coupled to one central spin only.
inline cplx factor_separate(const Bath& bath, double t) {
  if (bath.is_common()) {
    throw std::invalid_argument("factor_separate: got a common bath");
  }
  return detail::factor_product(bath, FrequencySelector::Coupling, t);
}

/// r12+ (w_1k + w_2k) or r12- (w_1k - w_2k) for a common bath.
inline cplx factor_common_pm(const Bath& bath, Sign sign, double t) {
  if (!bath.is_common()) {
    throw std::invalid_argument("factor_common_pm: got a separate bath");
  }
  return detail::factor_product(
      bath, sign == Sign::Plus ? FrequencySelector::Sum : FrequencySelector::Difference, t);
}

/// r1 or r2 for a common bath: shared amplitudes, the `which`-th coupling.
inline cplx factor_common_single(const Bath& bath, int which, double t) {
  if (!bath.is_common()) {
    throw std::invalid_argument("factor_common_single: got a separate bath");
  }
  if (which != 1 && which != 2) {
    throw std::invalid_argument("factor_common_single: which must be 1 or 2");
  }
  return detail::factor_product(
      bath, which == 1 ? FrequencySelector::Coupling : FrequencySelector::Coupling2, t);
}

/// 16 * sum_k |alpha_k|^2 |beta_k|^2 w_k^2 for the selected effective
/// frequency. Expanding each per-spin term to second order in t shows this
/// is the Gaussian rate of |r(t)|^2, i.e. |r(t)|^2 ~ exp(-a t^2) and
/// |r(t)| ~ exp(-a t^2 / 2) for large baths.
inline double gaussian_rate(const Bath& bath, FrequencySelector sel) {
  detail::check_selector(bath, sel);
  double sum = 0.0;
  for (const auto& s : bath.spins()) {
    const double w = detail::effective_frequency(s, sel);
    sum += s.up_weight() * s.down_weight() * w * w;
  }
  return 16.0 * sum;
}

}  // namespace spinbath
