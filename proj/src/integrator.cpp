#include "nmqsd/integrator.hpp"

#include <cmath>
#include <utility>

#include "nmqsd/entanglement.hpp"

namespace nmqsd {

void SimulationConfig::validate() const {
  params.validate();
  check_grid_resolution(grid, params.gamma);
  const double omega_max = std::max(std::abs(params.omega_a), std::abs(params.omega_b));
  if (grid.dt * omega_max > 0.1 + 1e-12)
    throw ConfigError("grid too coarse: dt * max(omega) must be <= 0.1");
  if (std::abs(initial_state.norm() - 1.0) > 1e-6)
    throw ConfigError("initial state must be normalized");
  if (operator_mode == OperatorMode::post_markov) {
    if (model != Model::dissipative)
      throw ConfigError("post_markov operator is defined for the dissipative model");
    if (params.omega_a != params.omega_b)
      throw ConfigError("post_markov operator requires omega_a == omega_b");
  }
}

double default_dt(double gamma) {
  return 0.5 * std::min(0.1 / gamma, 0.05);
}

Complex shifted_noise_update(Complex y, Complex exp_ldag_now, Complex exp_ldag_next,
                             double gamma, double dt) {
  const double decay = std::exp(-gamma * dt);
  return decay * y +
         0.25 * gamma * dt * (decay * exp_ldag_now + exp_ldag_next);
}

TrajectorySimulator::TrajectorySimulator(const SimulationConfig& cfg,
                                         std::shared_ptr<const CoefficientTable> coeffs)
    : cfg_(cfg), coeffs_(std::move(coeffs)) {
  cfg_.validate();
  hamiltonian_ = qubit_hamiltonian(cfg_.params.omega_a, cfg_.params.omega_b);
  lindblad_ = collective_lindblad(cfg_.model, cfg_.params.kappa);
  lindblad_dag_ = lindblad_.adjoint();
  const bool needs_table =
      cfg_.model == Model::dissipative && cfg_.operator_mode == OperatorMode::exact;
  if (needs_table && !coeffs_)
    coeffs_ = std::make_shared<const CoefficientTable>(
        tabulate_coefficients(cfg_.params, cfg_.grid));
  if (needs_table && coeffs_->rows.size() != static_cast<std::size_t>(cfg_.grid.n_points()))
    throw ConfigError("coefficient table does not match the grid");
}

TrajectorySimulator::TrajectorySimulator(const SimulationConfig& cfg)
    : TrajectorySimulator(cfg, nullptr) {}

TrajectoryState TrajectorySimulator::make_initial_state() const {
  TrajectoryState st;
  st.psi = cfg_.initial_state.normalized();
  return st;
}

Matrix4 TrajectorySimulator::obar_at(int index, Complex w_value) const {
  const double t = cfg_.grid.time(index);
  if (cfg_.model == Model::dephasing) return obar_dephasing(cfg_.params, t);
  if (cfg_.operator_mode == OperatorMode::post_markov)
    return obar_post_markov(cfg_.params, t);
  return assemble_obar_dissipative(coeffs_->rows[index], NoiseConvolution{w_value});
}

namespace {

// Generators of the norm-preserving equation evaluated in a normalized state:
//   -i H psi + (L - <L>) xtilde* psi
//   - [(Ldag - <Ldag>) Obar - <(Ldag - <Ldag>) Obar>] psi
Vector4 nonlinear_drift(const Vector4& psi, const Matrix4& h, const Matrix4& lind,
                        const Matrix4& lind_dag, const Matrix4& obar,
                        Complex x_shifted, Complex* exp_ldag_out) {
  const Vector4 l_psi = lind * psi;
  const Complex exp_l = psi.dot(l_psi);
  const Complex exp_ldag = std::conj(exp_l);
  if (exp_ldag_out) *exp_ldag_out = exp_ldag;
  const Vector4 obar_psi = obar * psi;
  const Vector4 u = lind_dag * obar_psi - exp_ldag * obar_psi;
  const Complex u_mean = psi.dot(u);
  return -kImag * (h * psi) + x_shifted * (l_psi - exp_l * psi) - u + u_mean * psi;
}

}  // namespace

double TrajectorySimulator::step(TrajectoryState& state, Complex raw_noise_now,
                                 Complex raw_noise_next, const SeedSpec& seed) const {
  const double dt = cfg_.grid.dt;
  const double gamma = cfg_.params.gamma;
  const int n = state.step;
  const bool track_w =
      cfg_.model == Model::dissipative && cfg_.operator_mode == OperatorMode::exact;

  const Complex x_now = raw_noise_now + state.y_shift;
  Complex exp_ldag_now;
  const Matrix4 obar_now = obar_at(n, state.w.w);
  const Vector4 k1 = nonlinear_drift(state.psi.amps, hamiltonian_, lindblad_,
                                     lindblad_dag_, obar_now, x_now, &exp_ldag_now);
  const Complex k1_w =
      track_w ? noise_convolution_rate(coeffs_->rows[n], cfg_.params, x_now)
              : Complex{0.0, 0.0};

  Vector4 proposal;
  Complex w_next = state.w.w;
  Complex y_next;
  if (cfg_.scheme == Scheme::euler_maruyama) {
    proposal = state.psi.amps + dt * k1;
    if (track_w) w_next += dt * k1_w;
  } else {
    // Predictor at t_{n+1}, then trapezoidal corrector for psi, y and w.
    const Complex k1_y = -gamma * state.y_shift + 0.5 * gamma * exp_ldag_now;
    Vector4 pred = state.psi.amps + dt * k1;
    const double pred_norm = pred.norm();
    if (!(pred_norm > 1e-12))
      throw TrajectoryError("norm collapse in predictor", seed, n);
    pred /= pred_norm;
    const Complex y_pred = state.y_shift + dt * k1_y;
    const Complex w_pred = state.w.w + dt * k1_w;
    const Complex x_next = raw_noise_next + y_pred;
    Complex exp_ldag_pred;
    const Matrix4 obar_next = obar_at(n + 1, w_pred);
    const Vector4 k2 = nonlinear_drift(pred, hamiltonian_, lindblad_, lindblad_dag_,
                                       obar_next, x_next, &exp_ldag_pred);
    const Complex k2_y = -gamma * y_pred + 0.5 * gamma * exp_ldag_pred;
    proposal = state.psi.amps + 0.5 * dt * (k1 + k2);
    y_next = state.y_shift + 0.5 * dt * (k1_y + k2_y);
    if (track_w) {
      const Complex k2_w =
          noise_convolution_rate(coeffs_->rows[n + 1], cfg_.params, x_next);
      w_next = state.w.w + 0.5 * dt * (k1_w + k2_w);
    }
  }

  const double norm = proposal.norm();
  if (!std::isfinite(norm))
    throw TrajectoryError("non-finite amplitudes", seed, n + 1);
  if (norm < 1e-12) throw TrajectoryError("norm collapse", seed, n + 1);
  state.psi.amps = proposal / norm;

  if (cfg_.scheme == Scheme::euler_maruyama) {
    // <Ldag> in the post-step state closes the trapezoidal memory update.
    const Complex exp_ldag_next = std::conj(state.psi.amps.dot(lindblad_ * state.psi.amps));
    y_next = shifted_noise_update(state.y_shift, exp_ldag_now, exp_ldag_next, gamma, dt);
  }
  state.y_shift = y_next;
  state.w.w = w_next;
  state.step = n + 1;
  return std::abs(norm - 1.0);
}

void TrajectorySimulator::step_linear(PureState& psi, NoiseConvolution& w,
                                      int step_index, Complex raw_noise_now,
                                      Complex raw_noise_next, const SeedSpec& seed) const {
  const double dt = cfg_.grid.dt;
  const int n = step_index;
  const bool track_w =
      cfg_.model == Model::dissipative && cfg_.operator_mode == OperatorMode::exact;

  const auto drift = [&](const Vector4& v, int idx, Complex noise, Complex w_val) {
    const Matrix4 obar = obar_at(idx, w_val);
    return Vector4(-kImag * (hamiltonian_ * v) + noise * (lindblad_ * v) -
                   lindblad_dag_ * (obar * v));
  };

  const Vector4 k1 = drift(psi.amps, n, raw_noise_now, w.w);
  const Complex k1_w =
      track_w ? noise_convolution_rate(coeffs_->rows[n], cfg_.params, raw_noise_now)
              : Complex{0.0, 0.0};
  if (cfg_.scheme == Scheme::euler_maruyama) {
    psi.amps += dt * k1;
    if (track_w) w.w += dt * k1_w;
  } else {
    const Vector4 pred = psi.amps + dt * k1;
    const Complex w_pred = w.w + dt * k1_w;
    const Vector4 k2 = drift(pred, n + 1, raw_noise_next, w_pred);
    psi.amps += 0.5 * dt * (k1 + k2);
    if (track_w) {
      const Complex k2_w =
          noise_convolution_rate(coeffs_->rows[n + 1], cfg_.params, raw_noise_next);
      w.w += 0.5 * dt * (k1_w + k2_w);
    }
  }
  const double norm = psi.norm();
  if (!std::isfinite(norm) || norm > 1e150)
    throw TrajectoryError("linear trajectory norm overflow", seed, n + 1);
  if (norm < 1e-150)
    throw TrajectoryError("linear trajectory norm underflow", seed, n + 1);
}

namespace {

TrajectoryOutput run_with_samples(const TrajectorySimulator& sim,
                                  const std::vector<Complex>& samples,
                                  const SeedSpec& seed, const RecordingOptions& rec) {
  const SimulationConfig& cfg = sim.config();
  const int n_points = cfg.grid.n_points();
  TrajectoryOutput out;
  out.times.resize(n_points);
  out.concurrence.resize(n_points);
  if (rec.store_states) {
    if (rec.state_stride < 1)
      throw ConfigError("state_stride must be >= 1");
    out.state_stride = rec.state_stride;
    out.states.reserve(static_cast<std::size_t>(n_points / rec.state_stride) + 1);
  }

  TrajectoryState state = sim.make_initial_state();
  double drift_sum = 0.0;
  for (int i = 0; i < n_points; ++i) {
    out.times[i] = cfg.grid.time(i);
    out.concurrence[i] = concurrence_pure(state.psi);
    if (rec.store_states && i % rec.state_stride == 0) out.states.push_back(state.psi);
    if (i + 1 < n_points) {
      double drift = 0.0;
      try {
        drift = sim.step(state, samples[i], samples[i + 1], seed);
      } catch (const TrajectoryError&) {
        throw;
      } catch (const std::exception& err) {
        throw TrajectoryError(err.what(), seed, i + 1);
      }
      out.max_norm_drift = std::max(out.max_norm_drift, drift);
      drift_sum += drift;
    }
  }
  out.mean_norm_drift = cfg.grid.n_steps > 0 ? drift_sum / cfg.grid.n_steps : 0.0;
  return out;
}

}  // namespace

TrajectoryOutput run_trajectory(const SimulationConfig& cfg, const SeedSpec& seed,
                                const RecordingOptions& rec,
                                std::shared_ptr<const CoefficientTable> coeffs) {
  TrajectorySimulator sim(cfg, std::move(coeffs));
  const NoisePath path =
      sample_path(CorrelationKernel{cfg.params.gamma}, cfg.grid, seed);
  return run_with_samples(sim, path.samples, seed, rec);
}

TrajectoryOutput run_trajectory_with_path(const SimulationConfig& cfg,
                                          const NoisePath& path,
                                          const RecordingOptions& rec) {
  if (path.grid.n_steps != cfg.grid.n_steps || path.grid.dt != cfg.grid.dt)
    throw ConfigError("noise path does not match the simulation grid");
  TrajectorySimulator sim(cfg);
  return run_with_samples(sim, path.samples, SeedSpec{}, rec);
}

std::vector<PureState> run_linear_trajectory(const SimulationConfig& cfg,
                                             const SeedSpec& seed) {
  TrajectorySimulator sim(cfg);
  const NoisePath path =
      sample_path(CorrelationKernel{cfg.params.gamma}, cfg.grid, seed);
  std::vector<PureState> states;
  states.reserve(cfg.grid.n_points());
  PureState psi = cfg.initial_state.normalized();
  NoiseConvolution w;
  states.push_back(psi);
  for (int n = 0; n < cfg.grid.n_steps; ++n) {
    sim.step_linear(psi, w, n, path.samples[n], path.samples[n + 1], seed);
    states.push_back(psi);
  }
  return states;
}

}  // namespace nmqsd
