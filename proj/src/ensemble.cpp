#include "nmqsd/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace nmqsd {

bool EnsembleConfig::operator==(const EnsembleConfig& o) const {
  return sim.model == o.sim.model && sim.operator_mode == o.sim.operator_mode &&
         sim.params.kappa == o.sim.params.kappa &&
         sim.params.gamma == o.sim.params.gamma &&
         sim.params.omega_a == o.sim.params.omega_a &&
         sim.params.omega_b == o.sim.params.omega_b &&
         sim.grid.t0 == o.sim.grid.t0 && sim.grid.dt == o.sim.grid.dt &&
         sim.grid.n_steps == o.sim.grid.n_steps &&
         sim.initial_state.amps == o.sim.initial_state.amps &&
         sim.scheme == o.sim.scheme && n_trajectories == o.n_trajectories &&
         master_seed == o.master_seed && store_states == o.store_states &&
         oracle == o.oracle && snapshot_stride == o.snapshot_stride &&
         oracle_opts.n_max == o.oracle_opts.n_max &&
         oracle_opts.substeps == o.oracle_opts.substeps;
}

void EnsembleConfig::validate() const {
  sim.validate();
  if (n_trajectories < 2)
    throw ConfigError("n_trajectories must be >= 2 for standard errors");
  if (snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
  if (n_workers < 0) throw ConfigError("n_workers must be >= 0");
  if (oracle == OracleKind::pseudomode && sim.model != Model::dissipative)
    throw ConfigError("pseudomode oracle requires the dissipative model");
  if (oracle == OracleKind::dephasing_exact && sim.model != Model::dephasing)
    throw ConfigError("dephasing oracle requires the dephasing model");
}

EnsembleResult aggregate_outputs(const EnsembleConfig& cfg,
                                 std::span<const std::optional<TrajectoryOutput>> outputs,
                                 std::vector<TrajectoryFailure> failures) {
  std::vector<TrajectoryOutput> completed;
  completed.reserve(outputs.size());
  for (const auto& o : outputs)
    if (o.has_value()) completed.push_back(*o);

  const double failure_cap = 0.01 * cfg.n_trajectories;
  if (static_cast<double>(failures.size()) > failure_cap)
    throw EnsembleError("ensemble aborted: more than 1% of trajectories failed (" +
                        std::to_string(failures.size()) + " of " +
                        std::to_string(cfg.n_trajectories) + ")");
  if (completed.size() < 2)
    throw EnsembleError("ensemble aborted: fewer than 2 trajectories completed");

  EnsembleResult result;
  result.series = mean_concurrence(completed);
  result.failures = std::move(failures);
  result.completed = static_cast<int>(completed.size());

  if (cfg.store_states) {
    const int stride = cfg.snapshot_stride;
    const std::size_t n_snaps = completed.front().states.size();
    result.snapshot_times.reserve(n_snaps);
    result.rho_snapshots.reserve(n_snaps);
    std::vector<PureState> column(completed.size());
    for (std::size_t k = 0; k < n_snaps; ++k) {
      for (std::size_t i = 0; i < completed.size(); ++i) column[i] = completed[i].states[k];
      result.snapshot_times.push_back(cfg.sim.grid.time(static_cast<int>(k) * stride));
      result.rho_snapshots.push_back(rho_from_ensemble(column));
    }
  }
  return result;
}

namespace {

void attach_oracle(const EnsembleConfig& cfg, ConcurrenceSeries& series) {
  if (cfg.oracle == OracleKind::none) return;
  const OracleCurve curve =
      compute_oracle(cfg.oracle, cfg.sim.model, cfg.sim.params,
                     cfg.sim.initial_state, cfg.sim.grid, cfg.oracle_opts);
  series.oracle_c = curve.c_rho;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
  cfg.validate();

  std::shared_ptr<const CoefficientTable> table;
  if (cfg.sim.model == Model::dissipative &&
      cfg.sim.operator_mode == OperatorMode::exact)
    table = std::make_shared<const CoefficientTable>(
        tabulate_coefficients(cfg.sim.params, cfg.sim.grid));

  const RecordingOptions rec{cfg.store_states, cfg.snapshot_stride};
  const int n = cfg.n_trajectories;
  std::vector<std::optional<TrajectoryOutput>> outputs(n);
  std::vector<std::optional<TrajectoryFailure>> failure_slots(n);

  int workers = cfg.n_workers > 0
                    ? cfg.n_workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, n);

  std::atomic<int> next{0};
  auto worker_loop = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      const SeedSpec seed{cfg.master_seed, static_cast<std::uint32_t>(i)};
      try {
        outputs[i] = run_trajectory(cfg.sim, seed, rec, table);
      } catch (const TrajectoryError& err) {
        failure_slots[i] =
            TrajectoryFailure{seed.stream_index, err.time_index, err.what()};
      }
    }
  };

  if (workers == 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
    for (std::thread& t : pool) t.join();
  }

  std::vector<TrajectoryFailure> failures;
  for (const auto& f : failure_slots)
    if (f.has_value()) failures.push_back(*f);

  EnsembleResult result = aggregate_outputs(cfg, outputs, std::move(failures));
  attach_oracle(cfg, result.series);
  return result;
}

ModeComparison compare_modes(const EnsembleConfig& cfg) {
  if (cfg.sim.model != Model::dissipative)
    throw ConfigError("compare_modes is defined for the dissipative model");
  EnsembleConfig exact_cfg = cfg;
  exact_cfg.sim.operator_mode = OperatorMode::exact;
  EnsembleConfig pm_cfg = cfg;
  pm_cfg.sim.operator_mode = OperatorMode::post_markov;
  pm_cfg.oracle = OracleKind::none;  // the reference belongs to the exact pair

  ModeComparison out;
  out.exact = run_ensemble(exact_cfg).series;
  out.post_markov = run_ensemble(pm_cfg).series;
  return out;
}

std::string to_string(SweepParameter p) {
  return p == SweepParameter::kappa ? "kappa" : "gamma";
}

std::vector<ConcurrenceSeries> sweep(const EnsembleConfig& cfg, SweepParameter param,
                                     std::span<const double> values) {
  std::vector<ConcurrenceSeries> out;
  out.reserve(values.size());
  for (const double v : values) {
    EnsembleConfig run_cfg = cfg;
    if (param == SweepParameter::kappa) {
      run_cfg.sim.params.kappa = v;
    } else {
      run_cfg.sim.params.gamma = v;
      run_cfg.sim.grid = make_grid(cfg.sim.grid.t_max(), default_dt(v));
    }
    out.push_back(run_ensemble(run_cfg).series);
  }
  return out;
}

}  // namespace nmqsd
