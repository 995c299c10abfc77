#pragma once

#include <functional>
#include <vector>

#include "nmqsd/noise.hpp"
#include "nmqsd/o_operator.hpp"
#include "nmqsd/qubit_algebra.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

// Possibly time-dependent master-equation right-hand side rho -> d rho / dt.
using MasterGenerator = std::function<DensityMatrix(double t, const DensityMatrix& rho)>;

struct PseudomodeConfig {
  // Fock truncation of the auxiliary mode. The two-qubit sector carries at
  // most 2 excitations and the coupling conserves excitation number, so
  // n_max = 4 leaves headroom; convergence is checked by raising it.
  int n_max = 4;
  ModelParams params{};
};

// Model of one damped bosonic mode at frequency zero replacing the bath:
//   d rho/dt = -i [H_sys + g (L a^dag + L^dag a), rho]
//              + Gamma (a rho a^dag - (1/2){a^dag a, rho})
// with g = sqrt(gamma/2) and Gamma = 2 gamma, so the mode correlation
// g^2 exp(-(Gamma/2)|t-s|) equals the trajectory kernel exactly. Starting
// from the mode vacuum this reproduces the reduced qubit dynamics of the
// dissipative model without any stochastic ingredient.
MasterGenerator pseudomode_generator(const PseudomodeConfig& cfg);

// Exact time-local equation for the dephasing model:
//   d rho/dt = -i [H_sys, rho] - f0(t) [L, [L, rho]],  L = sigma^A_z + kappa sigma^B_z.
// See docs/oracles.md for the one-line derivation.
MasterGenerator dephasing_master_generator(const ModelParams& p);

// Memoryless limit d rho/dt = -i[H,rho] + (1/2)(2 L rho Ldag - {Ldag L, rho});
// the 1/2 is the full kernel integral f0(infinity).
MasterGenerator markov_limit_generator(Model model, const ModelParams& p);

// Classical RK4 with `substeps` stages per grid step. Validates trace
// (1e-10), Hermiticity (1e-12) and positivity (min eigenvalue >= -1e-8) at
// every grid point; violations throw std::runtime_error with the time index.
std::vector<DensityMatrix> integrate_master_equation(const MasterGenerator& gen,
                                                     const DensityMatrix& rho0,
                                                     const TimeGrid& grid,
                                                     int substeps = 2);

struct OracleCurve {
  std::vector<double> times;
  std::vector<double> c_rho;             // two-qubit concurrence of rho_t
  std::vector<DensityMatrix> rho_qubit;  // reduced 4x4 state at each point
};

struct OracleOptions {
  int n_max = 4;     // pseudomode truncation
  int substeps = 2;  // RK4 substeps per grid step
};

// Deterministic reference curve for the requested oracle kind. The
// pseudomode oracle embeds `initial` (x) vacuum and traces the mode out;
// the other kinds act on the 4x4 state directly.
OracleCurve compute_oracle(OracleKind kind, Model model, const ModelParams& params,
                           const PureState& initial, const TimeGrid& grid,
                           const OracleOptions& opts = {});

}  // namespace nmqsd
