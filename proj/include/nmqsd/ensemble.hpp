#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nmqsd/entanglement.hpp"
#include "nmqsd/integrator.hpp"
#include "nmqsd/oracles.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

struct EnsembleConfig {
  SimulationConfig sim{};
  int n_trajectories = 1000;
  std::uint64_t master_seed = 20260801;
  bool store_states = false;
  OracleKind oracle = OracleKind::none;
  // Reduced-density snapshots are kept every snapshot_stride grid points to
  // bound memory; requires store_states.
  int snapshot_stride = 10;
  OracleOptions oracle_opts{};
  // Worker threads; 0 means hardware concurrency. Results are byte-identical
  // for any worker count: trajectory i always consumes SeedSpec(master, i)
  // and aggregation runs serially in trajectory order.
  int n_workers = 0;

  bool operator==(const EnsembleConfig&) const;
  void validate() const;
};

struct TrajectoryFailure {
  std::uint32_t stream_index = 0;
  int time_index = 0;
  std::string reason;
};

struct EnsembleResult {
  ConcurrenceSeries series;
  std::vector<double> snapshot_times;
  std::vector<DensityMatrix> rho_snapshots;
  std::vector<TrajectoryFailure> failures;  // recorded, never dropped
  int completed = 0;                        // trajectories entering the mean
};

struct EnsembleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Serial reduction of per-trajectory outputs in stream order; exposed so the
// bit-exactness of run_ensemble's aggregation can be checked externally.
EnsembleResult aggregate_outputs(const EnsembleConfig& cfg,
                                 std::span<const std::optional<TrajectoryOutput>> outputs,
                                 std::vector<TrajectoryFailure> failures);

// Runs n_trajectories independent unravelings and aggregates them. Fails
// (EnsembleError) when more than 1% of trajectories abort; individual aborts
// are excluded from the mean and listed in `failures`.
EnsembleResult run_ensemble(const EnsembleConfig& cfg);

struct ModeComparison {
  ConcurrenceSeries exact;        // oracle attached when requested
  ConcurrenceSeries post_markov;  // same seeds, perturbative operator
};

// Exact versus perturbative operator on common random numbers, plus the
// deterministic reference; dissipative model only.
ModeComparison compare_modes(const EnsembleConfig& cfg);

enum class SweepParameter { kappa, gamma };

std::string to_string(SweepParameter p);

// One series per parameter value, common master seed. Sweeping gamma rebuilds
// the grid with the default step rule for each value, keeping t_max.
std::vector<ConcurrenceSeries> sweep(const EnsembleConfig& cfg, SweepParameter param,
                                     std::span<const double> values);

}  // namespace nmqsd
