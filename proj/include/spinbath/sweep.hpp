// sweep.hpp - Monte Carlo time sweeps over random bath realizations and their
// CSV rendering.
//
// Each trial draws its own bath(s) from a seed derived from (seed, trial), so
// results do not depend on execution order. Rows are emitted per (trial,
// time), followed by per-time mean and standard deviation over trials.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spinbath/chsh.hpp"
#include "spinbath/decoherence.hpp"
#include "spinbath/density.hpp"
#include "spinbath/entanglement.hpp"
#include "spinbath/envelope.hpp"
#include "spinbath/sampling.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

enum class SweepScenario { TwoBath, Common, OneCoupled };

enum class Observable { Factors, Concurrence, Entropy, Chsh, GaussianFit };

inline std::string to_string(SweepScenario s) {
  switch (s) {
    case SweepScenario::TwoBath: return "two-bath";
    case SweepScenario::Common: return "common";
    case SweepScenario::OneCoupled: return "one-coupled";
  }
  return "unknown";
}

inline SweepScenario parse_scenario(const std::string& s) {
  if (s == "two-bath") return SweepScenario::TwoBath;
  if (s == "common" || s == "common-bath") return SweepScenario::Common;
  if (s == "one-coupled") return SweepScenario::OneCoupled;
  throw std::invalid_argument("unknown scenario '" + s + "'");
}

inline std::string to_string(Observable o) {
  switch (o) {
    case Observable::Factors: return "factors";
    case Observable::Concurrence: return "concurrence";
    case Observable::Entropy: return "entropy";
    case Observable::Chsh: return "chsh";
    case Observable::GaussianFit: return "gaussian-fit";
  }
  return "unknown";
}

inline Observable parse_observable(const std::string& s) {
  for (auto o : {Observable::Factors, Observable::Concurrence, Observable::Entropy,
                 Observable::Chsh, Observable::GaussianFit}) {
    if (to_string(o) == s) return o;
  }
  throw std::invalid_argument("unknown observable '" + s + "'");
}

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 101;

  /// `steps` equally spaced points, endpoints included.
  std::vector<double> points() const {
    std::vector<double> t(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      t[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return t;
  }
};

/// Initial pair state: a Bell index or explicit amplitudes.
using InitialState = std::variant<int, std::array<cplx, 4>>;

struct SweepConfig {
  SweepScenario scenario = SweepScenario::TwoBath;
  InitialState initial_state = 1;
  TimeGrid time_grid;
  std::size_t n_trials = 1;
  std::set<Observable> outputs = {Observable::Factors, Observable::Concurrence,
                                  Observable::Entropy, Observable::Chsh,
                                  Observable::GaussianFit};
  AngleSet angle_set = canonical_angles();
  /// Spins in bath 1, or in the common bath.
  std::size_t n_spins = 8;
  /// Spins in bath 2 (two-bath scenario); defaults to n_spins.
  std::optional<std::size_t> n_spins2;
  OmegaDistribution omega_dist = UniformDist{0.0, 1.0};
  /// Second coupling law (common bath).
  OmegaDistribution omega2_dist = UniformDist{0.0, 1.0};
  ThetaLaw theta_law = ThetaLaw::UniformAngle;
  std::uint64_t seed = 1;
};

inline PairState initial_pair_state(const InitialState& s) {
  if (const auto* idx = std::get_if<int>(&s)) return make_bell_state(*idx);
  return PairState(std::get<std::array<cplx, 4>>(s));
}

/// Throws std::invalid_argument on any inconsistency.
inline void validate(const SweepConfig& c) {
  if (c.time_grid.steps < 2) throw std::invalid_argument("time grid needs at least 2 steps");
  if (!std::isfinite(c.time_grid.start) || !std::isfinite(c.time_grid.stop) ||
      c.time_grid.stop < c.time_grid.start) {
    throw std::invalid_argument("time grid requires finite start <= stop");
  }
  if (c.n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
  if (c.outputs.empty()) throw std::invalid_argument("no outputs selected");
  (void)initial_pair_state(c.initial_state);
  for (double a : {c.angle_set.theta1, c.angle_set.theta2, c.angle_set.theta1p,
                   c.angle_set.theta2p}) {
    if (!std::isfinite(a)) throw std::invalid_argument("angles must be finite");
  }
  if (std::holds_alternative<MirrorDist>(c.omega_dist)) {
    throw std::invalid_argument("'same' is only valid for omega2_dist");
  }
  validate(c.omega_dist);
  validate(c.omega2_dist);  // ignored outside the common scenario
}

/// Baths of one trial.
inline Environment sample_environment(const SweepConfig& c, std::uint64_t trial) {
  SamplingSpec spec;
  spec.omega = c.omega_dist;
  spec.theta_law = c.theta_law;
  switch (c.scenario) {
    case SweepScenario::Common: {
      spec.label = BathLabel::Common;
      spec.n_spins = c.n_spins;
      spec.omega2 = c.omega2_dist;
      spec.seed = derive_seed(c.seed, trial, 0);
      return make_common(sample_bath(spec));
    }
    case SweepScenario::TwoBath:
    case SweepScenario::OneCoupled: {
      spec.label = BathLabel::Bath1;
      spec.n_spins = c.n_spins;
      spec.seed = derive_seed(c.seed, trial, 1);
      Bath b1 = sample_bath(spec);
      if (c.scenario == SweepScenario::OneCoupled) {
        return make_separate(std::move(b1), Bath::trivial(BathLabel::Bath2));
      }
      spec.label = BathLabel::Bath2;
      spec.n_spins = c.n_spins2.value_or(c.n_spins);
      spec.seed = derive_seed(c.seed, trial, 2);
      return make_separate(std::move(b1), sample_bath(spec));
    }
  }
  throw std::invalid_argument("unknown scenario");
}

/// Gaussian fit of one decoherence factor modulus within one trial.
struct FactorFit {
  std::size_t trial = 0;
  std::string factor;
  /// Rate from the bath parameters (16 sum |alpha|^2 |beta|^2 w^2).
  double predicted_rate = 0.0;
  std::optional<EnvelopeFit> fit;
  std::string note;
};

struct SweepRow {
  double time = 0.0;
  /// Trial index, or "mean" / "sd" for aggregate rows.
  std::string trial;
  std::vector<double> values;
};

struct SweepTable {
  std::vector<std::string> columns;  // observable columns, after time and trial
  std::vector<SweepRow> rows;
  std::vector<FactorFit> fits;
};

namespace detail {

inline bool wants(const SweepConfig& c, Observable o) { return c.outputs.count(o) > 0; }

inline std::vector<std::string> sweep_columns(const SweepConfig& c) {
  std::vector<std::string> cols;
  const bool common = c.scenario == SweepScenario::Common;
  const bool bell = std::holds_alternative<int>(c.initial_state);
  if (wants(c, Observable::Factors)) {
    std::vector<std::string> names = {"r1", "r2"};
    if (common) names.insert(names.end(), {"r12p", "r12m"});
    for (const auto& n : names) {
      cols.push_back("re_" + n);
      cols.push_back("im_" + n);
      cols.push_back("abs_" + n);
    }
  }
  if (wants(c, Observable::Concurrence)) {
    cols.push_back("concurrence");
    if (bell) cols.push_back("concurrence_closed");
  }
  if (wants(c, Observable::Entropy)) cols.push_back("entropy");
  if (wants(c, Observable::Chsh)) {
    cols.insert(cols.end(), {"S", "S1", "S2", "S3", "S4"});
  }
  return cols;
}

inline void push_factor(std::vector<double>& v, cplx r) {
  v.push_back(r.real());
  v.push_back(r.imag());
  v.push_back(std::abs(r));
}

}  // namespace detail

/// Runs every trial over the grid. Throws on the first failure; nothing is
/// returned partially.
inline SweepTable run_sweep(const SweepConfig& c) {
  validate(c);
  const PairState psi = initial_pair_state(c.initial_state);
  const std::vector<double> grid = c.time_grid.points();
  const bool common = c.scenario == SweepScenario::Common;
  const Scenario closed_scenario = common ? Scenario::Common : Scenario::TwoBath;
  const auto* bell = std::get_if<int>(&c.initial_state);

  SweepTable table;
  table.columns = detail::sweep_columns(c);
  const std::size_t ncol = table.columns.size();

  for (std::size_t trial = 0; trial < c.n_trials; ++trial) {
    const Environment env = sample_environment(c, trial);
    std::vector<std::vector<double>> moduli(4, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      const DecoherenceFactors f = factors_at(env, t);
      const DensityMatrix4 rho = rho_from_factors(psi, f);
      std::vector<double> v;
      v.reserve(ncol);
      if (detail::wants(c, Observable::Factors)) {
        detail::push_factor(v, f.r1);
        detail::push_factor(v, f.r2);
        if (common) {
          detail::push_factor(v, *f.r12_plus);
          detail::push_factor(v, *f.r12_minus);
        }
      }
      double conc = 0.0;
      if (detail::wants(c, Observable::Concurrence) || detail::wants(c, Observable::Entropy)) {
        conc = concurrence(rho);
      }
      if (detail::wants(c, Observable::Concurrence)) {
        v.push_back(conc);
        if (bell) {
          v.push_back(common ? concurrence_closed_common(*bell, *f.r12_plus, *f.r12_minus)
                             : concurrence_closed_two_baths(f.r1, f.r2));
        }
      }
      if (detail::wants(c, Observable::Entropy)) {
        v.push_back(entanglement_entropy_from_concurrence(conc));
      }
      if (detail::wants(c, Observable::Chsh)) {
        v.push_back(chsh_S(c.angle_set, rho));
        for (int k = 1; k <= 4; ++k) {
          v.push_back(chsh_closed_form(k, closed_scenario, c.angle_set, f));
        }
      }
      moduli[0][i] = std::abs(f.r1);
      moduli[1][i] = std::abs(f.r2);
      if (common) {
        moduli[2][i] = std::abs(*f.r12_plus);
        moduli[3][i] = std::abs(*f.r12_minus);
      }
      table.rows.push_back({t, std::to_string(trial), std::move(v)});
    }

    if (detail::wants(c, Observable::GaussianFit)) {
      struct Target {
        const char* name;
        int slot;
        const Bath* bath;
        FrequencySelector sel;
      };
      std::vector<Target> targets;
      if (const auto* sep = std::get_if<SeparateBaths>(&env)) {
        targets.push_back({"r1", 0, &sep->bath1, FrequencySelector::Coupling});
        targets.push_back({"r2", 1, &sep->bath2, FrequencySelector::Coupling});
      } else {
        const Bath* b = &std::get<CommonBath>(env).bath;
        targets.push_back({"r1", 0, b, FrequencySelector::Coupling});
        targets.push_back({"r2", 1, b, FrequencySelector::Coupling2});
        targets.push_back({"r12p", 2, b, FrequencySelector::Sum});
        targets.push_back({"r12m", 3, b, FrequencySelector::Difference});
      }
      for (const auto& tg : targets) {
        FactorFit ff;
        ff.trial = trial;
        ff.factor = tg.name;
        ff.predicted_rate = gaussian_rate(*tg.bath, tg.sel);
        try {
          ff.fit = fit_gaussian_envelope(grid, moduli[tg.slot]);
        } catch (const std::invalid_argument& e) {
          ff.note = e.what();
        }
        table.fits.push_back(std::move(ff));
      }
    }
  }

  // Aggregates over trials; sample standard deviation, zero for one trial.
  const double n = static_cast<double>(c.n_trials);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepRow mean{grid[i], "mean", std::vector<double>(ncol, 0.0)};
    SweepRow sd{grid[i], "sd", std::vector<double>(ncol, 0.0)};
    for (std::size_t trial = 0; trial < c.n_trials; ++trial) {
      const auto& v = table.rows[trial * grid.size() + i].values;
      for (std::size_t j = 0; j < ncol; ++j) mean.values[j] += v[j];
    }
    for (auto& m : mean.values) m /= n;
    if (c.n_trials > 1) {
      for (std::size_t trial = 0; trial < c.n_trials; ++trial) {
        const auto& v = table.rows[trial * grid.size() + i].values;
        for (std::size_t j = 0; j < ncol; ++j) {
          const double d = v[j] - mean.values[j];
          sd.values[j] += d * d;
        }
      }
      for (auto& x : sd.values) x = std::sqrt(x / (n - 1.0));
    }
    table.rows.push_back(std::move(mean));
    table.rows.push_back(std::move(sd));
  }
  return table;
}

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const SweepTable& table) {
  os << "time,trial";
  for (const auto& c : table.columns) os << ',' << c;
  os << '\n';
  for (const auto& row : table.rows) {
    os << format_number(row.time) << ',' << row.trial;
    for (double v : row.values) os << ',' << format_number(v);
    os << '\n';
  }
}

}  // namespace spinbath
