// Batch front-end: run trajectory ensembles, parameter sweeps and
// deterministic reference curves, and emit figure-ready CSV/JSON.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmqsd/ensemble.hpp"
#include "nmqsd/io.hpp"
#include "nmqsd/presets.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

std::string sweep_suffix(nmqsd::SweepParameter param, double value) {
  std::string v = std::to_string(value);
  v.erase(v.find_last_not_of('0') + 1);
  if (!v.empty() && v.back() == '.') v.pop_back();
  return "_" + nmqsd::to_string(param) + v;
}

void emit_single(const nmqsd::EnsembleConfig& cfg, const nmqsd::EnsembleResult& result,
                 const std::string& stem, const std::string& format) {
  if (format == "csv" || format == "both")
    nmqsd::write_series_csv(result.series, stem + ".csv");
  if (format == "json" || format == "both")
    nmqsd::write_result_json(cfg, result, stem + ".json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusive trajectory simulator for two-qubit entanglement dynamics"};

  std::string preset_name;
  std::string config_path;
  std::string model = "dissipative";
  std::string operator_mode = "exact";
  std::string scheme = "euler_maruyama";
  std::string state = "psi+";
  std::string oracle = "none";
  std::string out_stem = "nmqsd_out";
  std::string format = "csv";
  double kappa = 1.0;
  double gamma = 1.0;
  double omega = 1.0;
  double t_max = 15.0;
  std::optional<double> dt;
  int n_trajectories = 1000;
  std::uint64_t seed = 20260801;
  int workers = 0;
  std::string dump_noise, dump_coeffs, dump_trajectory, dump_oracle;

  app.add_option("--preset", preset_name,
                 "named experiment (fig1a..fig5b); other physics flags are ignored");
  app.add_option("--config", config_path, "JSON configuration file to load");
  app.add_option("--model", model, "dissipative | dephasing");
  app.add_option("--operator-mode", operator_mode, "exact | post_markov");
  app.add_option("--scheme", scheme, "euler_maruyama | heun");
  app.add_option("--kappa", kappa, "coupling ratio of qubit B, in [0,1]");
  app.add_option("--gamma", gamma, "inverse bath memory time (> 0)");
  app.add_option("--omega", omega, "qubit frequency (applied to both qubits)");
  app.add_option("--state", state, "initial Bell state: psi+ psi- phi+ phi-");
  app.add_option("--tmax", t_max, "final time");
  app.add_option("--dt", dt, "time step (default: min(0.1/gamma, 0.05)/2)");
  app.add_option("--n", n_trajectories, "number of trajectories");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--oracle", oracle, "none | pseudomode | dephasing_exact | markov");
  app.add_option("--out", out_stem, "output path stem");
  app.add_option("--format", format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--workers", workers, "worker threads (0 = hardware)");
  app.add_option("--dump-noise", dump_noise, "write one noise path (t,re,im) and exit");
  app.add_option("--dump-coeffs", dump_coeffs,
                 "write the dissipative coefficient table and exit");
  app.add_option("--dump-trajectory", dump_trajectory,
                 "write a single unraveling (t,c,amplitudes) and exit");
  app.add_option("--dump-oracle", dump_oracle,
                 "write the configured reference curve (t,c_rho) and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (!preset_name.empty()) {
      nmqsd::ExperimentPreset preset = nmqsd::make_preset(preset_name);
      nmqsd::EnsembleConfig cfg = preset.config;
      if (app.count("--n")) cfg.n_trajectories = n_trajectories;
      if (app.count("--seed")) cfg.master_seed = seed;
      if (app.count("--scheme")) cfg.sim.scheme = nmqsd::scheme_from_string(scheme);
      cfg.n_workers = workers;
      cfg.validate();
      std::cerr << preset.name << ": " << preset.description << "\n";

      if (preset.compare_operator_modes) {
        const nmqsd::ModeComparison cmp = nmqsd::compare_modes(cfg);
        nmqsd::write_series_csv(cmp.exact, out_stem + "_exact.csv");
        nmqsd::write_series_csv(cmp.post_markov, out_stem + "_post_markov.csv");
      } else if (preset.sweep_param) {
        const std::vector<nmqsd::ConcurrenceSeries> curves =
            nmqsd::sweep(cfg, *preset.sweep_param, preset.sweep_values);
        for (std::size_t i = 0; i < curves.size(); ++i)
          nmqsd::write_series_csv(
              curves[i],
              out_stem + sweep_suffix(*preset.sweep_param, preset.sweep_values[i]) +
                  ".csv");
      } else {
        emit_single(cfg, nmqsd::run_ensemble(cfg), out_stem, format);
      }
      return 0;
    }

    nmqsd::EnsembleConfig cfg;
    if (!config_path.empty()) {
      cfg = nmqsd::load_config_file(config_path);
    } else {
      cfg.sim.model = nmqsd::model_from_string(model);
      cfg.sim.operator_mode = nmqsd::operator_mode_from_string(operator_mode);
      cfg.sim.scheme = nmqsd::scheme_from_string(scheme);
      cfg.sim.params = nmqsd::ModelParams{kappa, gamma, omega, omega};
      cfg.sim.grid = nmqsd::make_grid(t_max, dt.value_or(nmqsd::default_dt(gamma)));
      cfg.sim.initial_state = nmqsd::bell_state(nmqsd::bell_from_string(state));
      cfg.n_trajectories = n_trajectories;
      cfg.master_seed = seed;
      cfg.oracle = nmqsd::oracle_from_string(oracle);
    }
    cfg.n_workers = workers;
    cfg.validate();

    if (!dump_noise.empty()) {
      const nmqsd::NoisePath path = nmqsd::sample_path(
          nmqsd::CorrelationKernel{cfg.sim.params.gamma}, cfg.sim.grid,
          nmqsd::SeedSpec{cfg.master_seed, 0});
      nmqsd::write_noise_csv(path, dump_noise);
      return 0;
    }
    if (!dump_coeffs.empty()) {
      nmqsd::write_coefficients_csv(
          nmqsd::tabulate_coefficients(cfg.sim.params, cfg.sim.grid), dump_coeffs);
      return 0;
    }
    if (!dump_trajectory.empty()) {
      const nmqsd::TrajectoryOutput traj = nmqsd::run_trajectory(
          cfg.sim, nmqsd::SeedSpec{cfg.master_seed, 0}, {true, 1});
      nmqsd::write_trajectory_csv(traj, dump_trajectory);
      return 0;
    }
    if (!dump_oracle.empty()) {
      const nmqsd::OracleKind kind =
          cfg.oracle != nmqsd::OracleKind::none
              ? cfg.oracle
              : (cfg.sim.model == nmqsd::Model::dissipative
                     ? nmqsd::OracleKind::pseudomode
                     : nmqsd::OracleKind::dephasing_exact);
      const nmqsd::OracleCurve curve =
          nmqsd::compute_oracle(kind, cfg.sim.model, cfg.sim.params,
                                cfg.sim.initial_state, cfg.sim.grid, cfg.oracle_opts);
      nmqsd::write_oracle_csv(curve, dump_oracle);
      return 0;
    }

    emit_single(cfg, nmqsd::run_ensemble(cfg), out_stem, format);
    return 0;
  } catch (const nmqsd::ConfigError& err) {
    std::cerr << "configuration error: " << err.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntimeError;
  }
}
