// sampling.hpp - Random bath construction. Bath spins point in random
// directions (theta uniform on [0, pi], phi uniform on [0, 2pi] by default)
// and couplings are drawn from a configurable distribution.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

struct UniformDist {
  double lo = 0.0;
  double hi = 1.0;
};
struct GaussianDist {
  double mean = 0.0;
  double sd = 1.0;
};
struct ConstantDist {
  double value = 1.0;
};
/// Second coupling equal to the first one, spin by spin (common bath only).
struct MirrorDist {};

using OmegaDistribution = std::variant<UniformDist, GaussianDist, ConstantDist, MirrorDist>;

/// How the polar angle of each bath spin is drawn. `UniformAngle` draws theta
/// itself uniformly on [0, pi]; `UniformSphere` draws cos(theta) uniformly on
/// [-1, 1] (isotropic directions).
enum class ThetaLaw { UniformAngle, UniformSphere };

struct SamplingSpec {
  std::size_t n_spins = 0;
  BathLabel label = BathLabel::Bath1;
  OmegaDistribution omega = UniformDist{};
  /// Required for common baths, forbidden otherwise.
  std::optional<OmegaDistribution> omega2;
  ThetaLaw theta_law = ThetaLaw::UniformAngle;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Text form of distributions: "uniform:lo,hi", "gaussian:mean,sd",
// "constant:value", "same".
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> parse_numbers(std::string_view s, const std::string& what) {
  std::vector<double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto tok = s.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad number in distribution '" + what + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline OmegaDistribution parse_distribution(const std::string& text) {
  if (text == "same") return MirrorDist{};
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("distribution '" + text + "': expected kind:params");
  }
  const std::string kind = text.substr(0, colon);
  const auto nums = detail::parse_numbers(std::string_view(text).substr(colon + 1), text);
  if (kind == "uniform" && nums.size() == 2) return UniformDist{nums[0], nums[1]};
  if (kind == "gaussian" && nums.size() == 2) return GaussianDist{nums[0], nums[1]};
  if (kind == "constant" && nums.size() == 1) return ConstantDist{nums[0]};
  throw std::invalid_argument("distribution '" + text + "': unknown kind or wrong arity");
}

inline std::string to_string(const OmegaDistribution& d) {
  using detail::format_double;
  if (const auto* u = std::get_if<UniformDist>(&d)) {
    return "uniform:" + format_double(u->lo) + "," + format_double(u->hi);
  }
  if (const auto* g = std::get_if<GaussianDist>(&d)) {
    return "gaussian:" + format_double(g->mean) + "," + format_double(g->sd);
  }
  if (const auto* c = std::get_if<ConstantDist>(&d)) return "constant:" + format_double(c->value);
  return "same";
}

inline void validate(const OmegaDistribution& d) {
  if (const auto* u = std::get_if<UniformDist>(&d)) {
    if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || u->lo > u->hi) {
      throw std::invalid_argument("uniform distribution requires finite lo <= hi");
    }
  } else if (const auto* g = std::get_if<GaussianDist>(&d)) {
    if (!std::isfinite(g->mean) || !std::isfinite(g->sd) || g->sd < 0.0) {
      throw std::invalid_argument("gaussian distribution requires finite mean and sd >= 0");
    }
  } else if (const auto* c = std::get_if<ConstantDist>(&d)) {
    if (!std::isfinite(c->value)) throw std::invalid_argument("constant must be finite");
  }
}

inline void validate(const SamplingSpec& spec) {
  if (std::holds_alternative<MirrorDist>(spec.omega)) {
    throw std::invalid_argument("'same' is only valid for the second coupling");
  }
  validate(spec.omega);
  if (spec.label == BathLabel::Common) {
    if (!spec.omega2) throw std::invalid_argument("common bath needs a second coupling law");
    validate(*spec.omega2);
  } else if (spec.omega2) {
    throw std::invalid_argument("separate bath cannot have a second coupling law");
  }
}

// ---------------------------------------------------------------------------
// Seeds and sampling
// ---------------------------------------------------------------------------

/// Independent 64-bit seed for (seed, trial, stream), via std::seed_seq.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    stream};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace detail {

inline double draw(const OmegaDistribution& d, std::mt19937_64& rng) {
  if (const auto* u = std::get_if<UniformDist>(&d)) {
    return std::uniform_real_distribution<double>(u->lo, u->hi)(rng);
  }
  if (const auto* g = std::get_if<GaussianDist>(&d)) {
    return g->mean + g->sd * std::normal_distribution<double>(0.0, 1.0)(rng);
  }
  return std::get<ConstantDist>(d).value;
}

}  // namespace detail

/// Deterministic in `spec.seed`. Zero spins yields the trivial bath.
inline Bath sample_bath(const SamplingSpec& spec) {
  validate(spec);
  if (spec.n_spins == 0) return Bath::trivial(spec.label);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BathSpin> spins;
  spins.reserve(spec.n_spins);
  for (std::size_t k = 0; k < spec.n_spins; ++k) {
    const double u = unit(rng);
    const double theta =
        spec.theta_law == ThetaLaw::UniformAngle ? kPi * u : std::acos(1.0 - 2.0 * u);
    const double phi = 2.0 * kPi * unit(rng);
    const double w1 = detail::draw(spec.omega, rng);
    std::optional<double> w2;
    if (spec.omega2) {
      w2 = std::holds_alternative<MirrorDist>(*spec.omega2) ? w1 : detail::draw(*spec.omega2, rng);
    }
    spins.push_back(BathSpin::from_angles(theta, phi, w1, w2));
  }
  return Bath(std::move(spins), spec.label);
}

}  // namespace spinbath
