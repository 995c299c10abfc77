#include "nmqsd/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nmqsd/entanglement.hpp"

namespace nmqsd {

namespace {

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix mode_annihilator(int fock_dim) {
  DensityMatrix a = DensityMatrix::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

void validate_state(const DensityMatrix& rho, int time_index) {
  const std::string at = " at time index " + std::to_string(time_index);
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::runtime_error("master equation: trace deviates" + at);
  if (!is_hermitian(rho, 1e-12))
    throw std::runtime_error("master equation: Hermiticity lost" + at);
  if (min_eigenvalue(rho) < -1e-8)
    throw std::runtime_error("master equation: state not positive" + at);
}

DensityMatrix rk4_step(const MasterGenerator& gen, const DensityMatrix& rho, double t,
                       double h) {
  const DensityMatrix k1 = gen(t, rho);
  const DensityMatrix k2 = gen(t + 0.5 * h, rho + 0.5 * h * k1);
  const DensityMatrix k3 = gen(t + 0.5 * h, rho + 0.5 * h * k2);
  const DensityMatrix k4 = gen(t + h, rho + h * k3);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

DensityMatrix advance_grid_step(const MasterGenerator& gen, DensityMatrix rho, double t,
                                double dt, int substeps) {
  const double h = dt / substeps;
  for (int s = 0; s < substeps; ++s) rho = rk4_step(gen, rho, t + s * h, h);
  return rho;
}

}  // namespace

MasterGenerator pseudomode_generator(const PseudomodeConfig& cfg) {
  cfg.params.validate();
  if (cfg.n_max < 2)
    throw ConfigError("pseudomode n_max must be >= 2 to hold both excitations");
  const int fock_dim = cfg.n_max + 1;
  const int dim = 4 * fock_dim;
  const double g = std::sqrt(0.5 * cfg.params.gamma);
  const double decay = 2.0 * cfg.params.gamma;

  const DensityMatrix id_mode = DensityMatrix::Identity(fock_dim, fock_dim);
  const DensityMatrix id4 = DensityMatrix::Identity(4, 4);
  const DensityMatrix a = kron(id4, mode_annihilator(fock_dim));
  const DensityMatrix a_dag = a.adjoint();
  const DensityMatrix lind =
      kron(collective_lowering(cfg.params.kappa), id_mode);
  const DensityMatrix h_sys =
      kron(qubit_hamiltonian(cfg.params.omega_a, cfg.params.omega_b), id_mode);
  const DensityMatrix h_total = h_sys + g * (lind * a_dag + lind.adjoint() * a);
  const DensityMatrix number_op = a_dag * a;

  return [=](double, const DensityMatrix& rho) -> DensityMatrix {
    if (rho.rows() != dim)
      throw std::invalid_argument("pseudomode generator: dimension mismatch");
    DensityMatrix drho = -kImag * (h_total * rho - rho * h_total);
    drho += decay * (a * rho * a_dag - 0.5 * (number_op * rho + rho * number_op));
    return drho;
  };
}

MasterGenerator dephasing_master_generator(const ModelParams& p) {
  p.validate();
  const Matrix4 lind = collective_dephasing(p.kappa);
  const Matrix4 h = qubit_hamiltonian(p.omega_a, p.omega_b);
  const double gamma = p.gamma;
  return [=](double t, const DensityMatrix& rho) -> DensityMatrix {
    const double f0 = f_functions(gamma, t).f0;
    const DensityMatrix comm = lind * rho - rho * lind;
    return -kImag * (h * rho - rho * h) - f0 * (lind * comm - comm * lind);
  };
}

MasterGenerator markov_limit_generator(Model model, const ModelParams& p) {
  p.validate();
  const Matrix4 lind = collective_lindblad(model, p.kappa);
  const Matrix4 lind_dag = lind.adjoint();
  const Matrix4 lind_sq = lind_dag * lind;
  const Matrix4 h = qubit_hamiltonian(p.omega_a, p.omega_b);
  return [=](double, const DensityMatrix& rho) -> DensityMatrix {
    return -kImag * (h * rho - rho * h) + lind * rho * lind_dag -
           0.5 * (lind_sq * rho + rho * lind_sq);
  };
}

std::vector<DensityMatrix> integrate_master_equation(const MasterGenerator& gen,
                                                     const DensityMatrix& rho0,
                                                     const TimeGrid& grid,
                                                     int substeps) {
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  if (rho0.rows() != rho0.cols())
    throw std::invalid_argument("integrate_master_equation: rho0 not square");
  validate_state(rho0, 0);
  std::vector<DensityMatrix> out;
  out.reserve(grid.n_points());
  out.push_back(rho0);
  for (int n = 0; n < grid.n_steps; ++n) {
    out.push_back(advance_grid_step(gen, out.back(), grid.time(n), grid.dt, substeps));
    validate_state(out.back(), n + 1);
  }
  return out;
}

OracleCurve compute_oracle(OracleKind kind, Model model, const ModelParams& params,
                           const PureState& initial, const TimeGrid& grid,
                           const OracleOptions& opts) {
  if (kind == OracleKind::none)
    throw ConfigError("compute_oracle: no oracle kind selected");
  if (kind == OracleKind::pseudomode && model != Model::dissipative)
    throw ConfigError("the pseudomode reference applies to the dissipative model");
  if (kind == OracleKind::dephasing_exact && model != Model::dephasing)
    throw ConfigError("the time-local reference applies to the dephasing model");

  MasterGenerator gen;
  DensityMatrix rho;
  int fock_dim = 0;
  const DensityMatrix rho_qubit0 = projector(initial.normalized());
  switch (kind) {
    case OracleKind::pseudomode: {
      PseudomodeConfig cfg{opts.n_max, params};
      gen = pseudomode_generator(cfg);
      fock_dim = opts.n_max + 1;
      DensityMatrix vacuum = DensityMatrix::Zero(fock_dim, fock_dim);
      vacuum(0, 0) = 1.0;
      rho = kron(rho_qubit0, vacuum);
      break;
    }
    case OracleKind::dephasing_exact:
      gen = dephasing_master_generator(params);
      rho = rho_qubit0;
      break;
    case OracleKind::markov:
      gen = markov_limit_generator(model, params);
      rho = rho_qubit0;
      break;
    case OracleKind::none:
      break;
  }

  OracleCurve curve;
  curve.times.reserve(grid.n_points());
  curve.c_rho.reserve(grid.n_points());
  curve.rho_qubit.reserve(grid.n_points());
  for (int n = 0; n < grid.n_points(); ++n) {
    if (n > 0) rho = advance_grid_step(gen, rho, grid.time(n - 1), grid.dt, opts.substeps);
    validate_state(rho, n);
    DensityMatrix reduced = fock_dim > 0 ? partial_trace_mode(rho, fock_dim) : rho;
    curve.times.push_back(grid.time(n));
    curve.c_rho.push_back(concurrence_mixed(reduced));
    curve.rho_qubit.push_back(std::move(reduced));
  }
  return curve;
}

}  // namespace nmqsd
