// config.hpp - JSON form of SweepConfig (config files and the metadata
// sidecar written next to every sweep CSV).

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "spinbath/sweep.hpp"

namespace spinbath {

using json = nlohmann::json;

inline std::string to_string(ThetaLaw law) {
  return law == ThetaLaw::UniformAngle ? "uniform-angle" : "uniform-sphere";
}

inline ThetaLaw parse_theta_law(const std::string& s) {
  if (s == "uniform-angle") return ThetaLaw::UniformAngle;
  if (s == "uniform-sphere") return ThetaLaw::UniformSphere;
  throw std::invalid_argument("unknown theta law '" + s + "'");
}

inline json to_json(const SweepConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  if (const auto* idx = std::get_if<int>(&c.initial_state)) {
    j["initial_state"] = {{"bell", *idx}};
  } else {
    json amps = json::array();
    for (const auto& a : std::get<std::array<cplx, 4>>(c.initial_state)) {
      amps.push_back({a.real(), a.imag()});
    }
    j["initial_state"] = {{"amplitudes", amps}};
  }
  j["time_grid"] = {{"start", c.time_grid.start},
                    {"stop", c.time_grid.stop},
                    {"steps", c.time_grid.steps}};
  j["n_trials"] = c.n_trials;
  json outs = json::array();
  for (auto o : c.outputs) outs.push_back(to_string(o));
  j["outputs"] = outs;
  j["angle_set"] = {{"theta1", c.angle_set.theta1},
                    {"theta2", c.angle_set.theta2},
                    {"theta1p", c.angle_set.theta1p},
                    {"theta2p", c.angle_set.theta2p}};
  j["n_spins"] = c.n_spins;
  if (c.n_spins2) j["n_spins2"] = *c.n_spins2;
  j["omega_dist"] = to_string(c.omega_dist);
  j["omega2_dist"] = to_string(c.omega2_dist);
  j["theta_law"] = to_string(c.theta_law);
  j["seed"] = c.seed;
  return j;
}

/// Missing keys keep the defaults of `base`. Throws std::invalid_argument on
/// malformed values.
inline SweepConfig from_json(const json& j, SweepConfig base = {}) {
  try {
    SweepConfig c = std::move(base);
    if (j.contains("scenario")) c.scenario = parse_scenario(j.at("scenario").get<std::string>());
    if (j.contains("initial_state")) {
      const auto& s = j.at("initial_state");
      if (s.contains("bell")) {
        c.initial_state = s.at("bell").get<int>();
      } else if (s.contains("amplitudes")) {
        const auto& a = s.at("amplitudes");
        if (!a.is_array() || a.size() != 4) {
          throw std::invalid_argument("initial_state.amplitudes needs 4 [re, im] pairs");
        }
        std::array<cplx, 4> amps;
        for (std::size_t i = 0; i < 4; ++i) {
          amps[i] = {a[i].at(0).get<double>(), a[i].at(1).get<double>()};
        }
        c.initial_state = amps;
      } else {
        throw std::invalid_argument("initial_state needs 'bell' or 'amplitudes'");
      }
    }
    if (j.contains("time_grid")) {
      const auto& g = j.at("time_grid");
      c.time_grid.start = g.value("start", c.time_grid.start);
      c.time_grid.stop = g.value("stop", c.time_grid.stop);
      c.time_grid.steps = g.value("steps", c.time_grid.steps);
    }
    if (j.contains("n_trials")) c.n_trials = j.at("n_trials").get<std::size_t>();
    if (j.contains("outputs")) {
      c.outputs.clear();
      for (const auto& o : j.at("outputs")) c.outputs.insert(parse_observable(o.get<std::string>()));
    }
    if (j.contains("angle_set")) {
      const auto& a = j.at("angle_set");
      if (a.is_string()) {
        if (a.get<std::string>() != "canonical") {
          throw std::invalid_argument("angle_set must be 'canonical' or an object");
        }
        c.angle_set = canonical_angles();
      } else {
        c.angle_set = {a.at("theta1").get<double>(), a.at("theta2").get<double>(),
                       a.at("theta1p").get<double>(), a.at("theta2p").get<double>()};
      }
    }
    if (j.contains("n_spins")) c.n_spins = j.at("n_spins").get<std::size_t>();
    if (j.contains("n_spins2")) c.n_spins2 = j.at("n_spins2").get<std::size_t>();
    if (j.contains("omega_dist")) {
      c.omega_dist = parse_distribution(j.at("omega_dist").get<std::string>());
    }
    if (j.contains("omega2_dist")) {
      c.omega2_dist = parse_distribution(j.at("omega2_dist").get<std::string>());
    }
    if (j.contains("theta_law")) c.theta_law = parse_theta_law(j.at("theta_law").get<std::string>());
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

inline SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  return from_json(j);
}

/// Config, run label and per-trial envelope fits of a finished sweep.
inline json sweep_metadata(const SweepConfig& c, const SweepTable& table) {
  json meta;
  meta["config"] = to_json(c);
  meta["ensemble"] = c.n_trials > 1 ? "ensemble-average" : "single-realization";
  meta["columns"] = table.columns;
  json fits = json::array();
  for (const auto& f : table.fits) {
    json jf = {{"trial", f.trial}, {"factor", f.factor}, {"predicted_rate", f.predicted_rate}};
    if (f.fit) {
      jf["a_hat"] = f.fit->a_hat;
      jf["max_residual"] = f.fit->max_residual;
      jf["window"] = f.fit->window;
    } else {
      jf["note"] = f.note;
    }
    fits.push_back(jf);
  }
  meta["gaussian_fits"] = fits;
  return meta;
}

}  // namespace spinbath
