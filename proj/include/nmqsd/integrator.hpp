#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "nmqsd/noise.hpp"
#include "nmqsd/o_operator.hpp"
#include "nmqsd/qubit_algebra.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

struct SimulationConfig {
  Model model = Model::dissipative;
  OperatorMode operator_mode = OperatorMode::exact;
  ModelParams params{};
  TimeGrid grid{};
  PureState initial_state = bell_state(BellKind::psi_plus);
  Scheme scheme = Scheme::euler_maruyama;

  void validate() const;  // throws ConfigError
};

// Default step: half of min(0.1/gamma, 0.05), which resolves both the kernel
// memory and the qubit frequencies at the defaults.
double default_dt(double gamma);

// Everything one trajectory carries between steps. coeffs/w are only used by
// the exact dissipative operator; y_shift accumulates the memory integral
// INT_0^t alpha(t,s) <Ldag>_s ds that turns the raw noise into the shifted
// noise driving the norm-preserving equation.
struct TrajectoryState {
  PureState psi;
  NoiseConvolution w{};
  Complex y_shift{0.0, 0.0};
  int step = 0;
};

struct TrajectoryOutput {
  std::vector<double> times;
  std::vector<double> concurrence;
  // States recorded every state_stride points when requested (index k holds
  // the state at grid point k * state_stride).
  int state_stride = 0;
  std::vector<PureState> states;
  // Step-quality diagnostics: norm deviation before renormalization.
  double max_norm_drift = 0.0;
  double mean_norm_drift = 0.0;
};

struct TrajectoryError : std::runtime_error {
  TrajectoryError(const std::string& what, SeedSpec seed_, int time_index_)
      : std::runtime_error(what), seed(seed_), time_index(time_index_) {}
  SeedSpec seed{};
  int time_index = 0;
};

// One Duhamel-exact trapezoid update of the shifted-noise accumulator for
// dy/dt = -gamma y + (gamma/2) <Ldag>_t, using the expectation at both ends
// of the step. Exactness of the exponential factor keeps the update
// second-order accurate.
Complex shifted_noise_update(Complex y, Complex exp_ldag_now, Complex exp_ldag_next,
                             double gamma, double dt);

// Drives single trajectories. The coefficient table is shared, read-only.
class TrajectorySimulator {
 public:
  TrajectorySimulator(const SimulationConfig& cfg,
                      std::shared_ptr<const CoefficientTable> coeffs);
  // Builds the table itself when the exact dissipative operator needs one.
  explicit TrajectorySimulator(const SimulationConfig& cfg);

  TrajectoryState make_initial_state() const;

  // Advances state from grid point state.step to state.step + 1 given the raw
  // noise at both ends of the step (the second sample is only used by the
  // predictor-corrector scheme). Expectation values are taken in the pre-step
  // state for Euler-Maruyama. Returns the norm deviation |norm - 1| of the
  // proposal before renormalization. Throws TrajectoryError on norm collapse.
  double step(TrajectoryState& state, Complex raw_noise_now, Complex raw_noise_next,
              const SeedSpec& seed) const;

  // Unnormalized evolution driven by the raw noise; no expectation-value
  // terms. Throws TrajectoryError if the norm leaves [1e-150, 1e150].
  void step_linear(PureState& psi, NoiseConvolution& w, int step_index,
                   Complex raw_noise_now, Complex raw_noise_next,
                   const SeedSpec& seed) const;

  const SimulationConfig& config() const { return cfg_; }
  const CoefficientTable* coefficients() const { return coeffs_.get(); }

 private:
  Matrix4 obar_at(int index, Complex w_value) const;
  SimulationConfig cfg_;
  std::shared_ptr<const CoefficientTable> coeffs_;
  Matrix4 hamiltonian_;
  Matrix4 lindblad_;
  Matrix4 lindblad_dag_;
};

struct RecordingOptions {
  bool store_states = false;
  int state_stride = 10;
};

// Full trajectory with concurrence at every grid point; bit-deterministic in
// (cfg, seed) regardless of scheduling.
TrajectoryOutput run_trajectory(const SimulationConfig& cfg, const SeedSpec& seed,
                                const RecordingOptions& rec = {},
                                std::shared_ptr<const CoefficientTable> coeffs = nullptr);

// Same dynamics driven by an explicit noise path (step-refinement checks).
TrajectoryOutput run_trajectory_with_path(const SimulationConfig& cfg,
                                          const NoisePath& path,
                                          const RecordingOptions& rec = {});

// Unnormalized linear evolution; returns the state at every grid point.
std::vector<PureState> run_linear_trajectory(const SimulationConfig& cfg,
                                             const SeedSpec& seed);

}  // namespace nmqsd
