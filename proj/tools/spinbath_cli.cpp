// spinbath_cli.cpp - Command line front end.
//
//   spinbath sweep         run a Monte Carlo time sweep, write CSV + metadata
//   spinbath oracle-check  compare analytic and brute-force reduced states
//   spinbath fit           Gaussian-envelope fit of a column of a sweep CSV
//
// Exit codes: 0 success, 2 invalid configuration, 3 internal-consistency
// failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinbath/config.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/spinbath.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;

constexpr double kOracleTol = 1e-12;
constexpr double kConcurrenceTol = 1e-9;

struct SweepFlags {
  std::string config_path;
  std::string scenario;
  int bell = 0;
  std::size_t n_spins = 0;
  std::size_t n_spins2 = 0;
  std::string omega_dist;
  std::string omega2_dist;
  std::string theta_law;
  double t_max = 0.0;
  std::size_t steps = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::string out = "-";
};

struct Options {
  CLI::Option* scenario = nullptr;
  CLI::Option* bell = nullptr;
  CLI::Option* n_spins = nullptr;
  CLI::Option* n_spins2 = nullptr;
  CLI::Option* omega_dist = nullptr;
  CLI::Option* omega2_dist = nullptr;
  CLI::Option* theta_law = nullptr;
  CLI::Option* t_max = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* outputs = nullptr;
};

void add_model_flags(CLI::App* cmd, SweepFlags& f, Options& o) {
  o.scenario = cmd->add_option("--scenario", f.scenario, "two-bath | common | one-coupled");
  o.n_spins = cmd->add_option("--n-spins", f.n_spins, "spins in bath 1 (or the common bath)");
  o.n_spins2 = cmd->add_option("--n-spins2", f.n_spins2, "spins in bath 2 (default: --n-spins)");
  o.omega_dist = cmd->add_option("--omega-dist", f.omega_dist,
                                 "coupling law: uniform:lo,hi | gaussian:mean,sd | constant:v");
  o.omega2_dist = cmd->add_option("--omega2-dist", f.omega2_dist,
                                  "second coupling law (common bath); also accepts 'same'");
  o.theta_law = cmd->add_option("--theta-law", f.theta_law, "uniform-angle | uniform-sphere");
  o.t_max = cmd->add_option("--t-max", f.t_max, "end of the time grid (grid starts at 0)");
  o.steps = cmd->add_option("--steps", f.steps, "number of time points");
  o.seed = cmd->add_option("--seed", f.seed, "64-bit seed");
}

// Flags given on the command line override the config file.
spinbath::SweepConfig apply_flags(spinbath::SweepConfig c, const SweepFlags& f, const Options& o) {
  using namespace spinbath;
  if (o.scenario && o.scenario->count()) c.scenario = parse_scenario(f.scenario);
  if (o.bell && o.bell->count()) c.initial_state = f.bell;
  if (o.n_spins && o.n_spins->count()) c.n_spins = f.n_spins;
  if (o.n_spins2 && o.n_spins2->count()) c.n_spins2 = f.n_spins2;
  if (o.omega_dist && o.omega_dist->count()) c.omega_dist = parse_distribution(f.omega_dist);
  if (o.omega2_dist && o.omega2_dist->count()) c.omega2_dist = parse_distribution(f.omega2_dist);
  if (o.theta_law && o.theta_law->count()) c.theta_law = parse_theta_law(f.theta_law);
  if (o.t_max && o.t_max->count()) {
    c.time_grid.start = 0.0;
    c.time_grid.stop = f.t_max;
  }
  if (o.steps && o.steps->count()) c.time_grid.steps = f.steps;
  if (o.trials && o.trials->count()) c.n_trials = f.trials;
  if (o.seed && o.seed->count()) c.seed = f.seed;
  if (o.outputs && o.outputs->count()) {
    c.outputs.clear();
    for (const auto& s : f.outputs) c.outputs.insert(parse_observable(s));
  }
  return c;
}

int run_sweep_command(const SweepFlags& f, const Options& o) {
  using namespace spinbath;
  SweepConfig cfg = f.config_path.empty() ? SweepConfig{} : load_config(f.config_path);
  cfg = apply_flags(std::move(cfg), f, o);
  const SweepTable table = run_sweep(cfg);

  std::ostringstream csv;
  write_csv(csv, table);
  if (f.out == "-") {
    std::cout << csv.str();
    return kExitOk;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + f.out + "'");
  out << csv.str();
  std::ofstream meta(f.out + ".meta.json", std::ios::binary);
  meta << sweep_metadata(cfg, table).dump(2) << '\n';
  std::cerr << "wrote " << table.rows.size() << " rows to " << f.out << " (+ " << f.out
            << ".meta.json)\n";
  return kExitOk;
}

int run_oracle_check(const SweepFlags& f, const Options& o) {
  using namespace spinbath;
  SweepConfig cfg;
  cfg.n_spins = 4;
  cfg.time_grid = {0.0, 1.0, 11};
  cfg = apply_flags(std::move(cfg), f, o);
  validate(cfg);
  const Environment env = sample_environment(cfg, 0);
  const auto grid = cfg.time_grid.points();

  std::mt19937_64 rng(derive_seed(cfg.seed, 0, 99));
  std::normal_distribution<double> g;
  std::array<cplx, 4> raw;
  double n2 = 0.0;
  for (auto& a : raw) {
    a = {g(rng), g(rng)};
    n2 += std::norm(a);
  }
  for (auto& a : raw) a /= std::sqrt(n2);

  std::vector<std::pair<std::string, PairState>> states;
  for (int k = 1; k <= 4; ++k) states.emplace_back("bell-" + std::to_string(k), make_bell_state(k));
  states.emplace_back("random", PairState(raw));

  double worst = 0.0;
  double worst_conc = 0.0;
  for (const auto& [name, psi] : states) {
    double dev = 0.0;
    double conc_dev = 0.0;
    for (double t : grid) {
      const DensityMatrix4 brute = oracle::partial_trace_pair(oracle::evolve_full_state(psi, env, t));
      const DecoherenceFactors fct = factors_at(env, t);
      dev = std::max(dev, rho_from_factors(psi, fct).max_abs_diff(brute));
      if (name != "random") {
        const int k = name.back() - '0';
        const double closed = fct.is_common()
                                  ? concurrence_closed_common(k, *fct.r12_plus, *fct.r12_minus)
                                  : concurrence_closed_two_baths(fct.r1, fct.r2);
        conc_dev = std::max(conc_dev, std::abs(concurrence(brute) - closed));
      }
    }
    std::cout << name << ": max entrywise deviation " << format_number(dev);
    if (name != "random") std::cout << ", concurrence deviation " << format_number(conc_dev);
    std::cout << '\n';
    worst = std::max(worst, dev);
    worst_conc = std::max(worst_conc, conc_dev);
  }
  std::cout << "max deviation " << format_number(worst) << '\n';
  if (worst > kOracleTol || worst_conc > kConcurrenceTol) {
    std::cerr << "oracle-check: deviation above tolerance\n";
    return kExitConsistency;
  }
  return kExitOk;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

int run_fit_command(const std::string& path, const std::string& column) {
  using namespace spinbath;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV '" + path + "'");
  const auto header = split_csv_line(line);
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw std::invalid_argument("column '" + column + "' not in CSV");
  const auto col = static_cast<std::size_t>(it - header.begin());
  if (header.size() < 2 || header[0] != "time" || header[1] != "trial") {
    throw std::invalid_argument("not a sweep CSV (expected time,trial,...)");
  }

  std::map<long, std::pair<std::vector<double>, std::vector<double>>> per_trial;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::invalid_argument("ragged CSV row");
    if (cells[1] == "mean" || cells[1] == "sd") continue;
    auto& [ts, ms] = per_trial[std::stol(cells[1])];
    ts.push_back(std::stod(cells[0]));
    ms.push_back(std::stod(cells[col]));
  }
  std::cout << "trial,a_hat,max_residual,window\n";
  for (const auto& [trial, data] : per_trial) {
    const EnvelopeFit fit = fit_gaussian_envelope(data.first, data.second);
    std::cout << trial << ',' << format_number(fit.a_hat) << ','
              << format_number(fit.max_residual) << ',' << fit.window << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled spin pair dephasing in spin baths"};
  app.require_subcommand(1);

  SweepFlags sweep_flags;
  Options sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo time sweep written as CSV");
  sweep->add_option("--config", sweep_flags.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  add_model_flags(sweep, sweep_flags, sweep_opts);
  sweep_opts.bell = sweep->add_option("--bell", sweep_flags.bell, "initial Bell state 1..4");
  sweep_opts.trials = sweep->add_option("--trials", sweep_flags.trials, "bath realizations");
  sweep_opts.outputs = sweep->add_option(
      "--outputs", sweep_flags.outputs, "factors concurrence entropy chsh gaussian-fit");
  sweep->add_option("--out", sweep_flags.out, "CSV path ('-' for stdout)");

  SweepFlags oracle_flags;
  Options oracle_opts;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "analytic vs brute-force reduced density matrix");
  add_model_flags(oracle_cmd, oracle_flags, oracle_opts);

  std::string fit_in;
  std::string fit_column = "abs_r1";
  auto* fit = app.add_subcommand("fit", "Gaussian-envelope fit on a sweep CSV");
  fit->add_option("--in", fit_in, "sweep CSV")->required();
  fit->add_option("--column", fit_column, "modulus column to fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(sweep_flags, sweep_opts);
    if (oracle_cmd->parsed()) return run_oracle_check(oracle_flags, oracle_opts);
    if (fit->parsed()) return run_fit_command(fit_in, fit_column);
  } catch (const spinbath::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const spinbath::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
