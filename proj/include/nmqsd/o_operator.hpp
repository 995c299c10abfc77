#pragma once

#include <vector>

#include "nmqsd/noise.hpp"
#include "nmqsd/qubit_algebra.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

struct ModelParams {
  double kappa = 1.0;    // coupling ratio of qubit B, in [0, 1]
  double gamma = 1.0;    // inverse memory time of the bath kernel
  double omega_a = 1.0;  // qubit transition frequencies
  double omega_b = 1.0;

  void validate() const;  // throws ConfigError
};

// Coefficients of the memory-integrated operator for the dissipative model,
//   Obar(t) = a sigma^A_- + b sigma^B_- + f sigma^A_z sigma^B_-
//           + g sigma^B_z sigma^A_- + i N(t) sigma^A_- sigma^B_-,
// together with log_e, the log of the propagator
//   E(t) = exp INT_0^t [-gamma + i(omega_a+omega_b) + 2a + 2 kappa b] ds.
// Only the log is stored; E itself can under/overflow at large t.
struct OCoefficients {
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
  Complex f{0.0, 0.0};
  Complex g{0.0, 0.0};
  Complex q{0.0, 0.0};
  Complex log_e{0.0, 0.0};
};

// Right-hand side of the closed coefficient ODE system. q obeys
//   dq = [-2 gamma + i(omega_a+omega_b) + 2(a + kappa b)] q
//        - i gamma (f + kappa g),
// which identifies q(t) with INT_0^t alpha(t,s) P(t,s) ds for the two-time
// propagator P(t,s) = -2i [f(s) + kappa g(s)] E(t)/E(s). The kernel-weighted
// check of exactly this identity is in the tests.
OCoefficients coeff_derivatives(const OCoefficients& c, const ModelParams& p);

// One classical RK4 step; the system is smooth and non-stiff for
// dt * gamma <= 0.1 (enforced).
OCoefficients step_coefficients(const OCoefficients& c, const ModelParams& p,
                                double dt);

// Coefficients at every grid point. Deterministic and noise-independent, so
// one table per (params, grid) is shared read-only by all trajectories.
struct CoefficientTable {
  TimeGrid grid;
  std::vector<OCoefficients> rows;
};

CoefficientTable tabulate_coefficients(const ModelParams& p, const TimeGrid& grid);

// Running value of W(t) = INT_0^t [f(s) + kappa g(s)] xtilde*_s / E(s) ds.
// P(t,s) factorizes as -2i [f(s)+kappa g(s)] E(t)/E(s), so the history
// integral INT P(t,s) xtilde*_s ds collapses to -2i E(t) W(t): O(1) state
// per trajectory instead of a two-time array.
struct NoiseConvolution {
  Complex w{0.0, 0.0};
};

// Integrand of W at one instant: (f + kappa g) * x_shifted * exp(-log_e).
Complex noise_convolution_rate(const OCoefficients& c, const ModelParams& p,
                               Complex x_shifted);

// Assembles the dissipative operator at the common time of c and w.
// Throws std::domain_error if c or w carries non-finite entries.
Matrix4 assemble_obar_dissipative(const OCoefficients& c, const NoiseConvolution& w);

struct FFunctions {
  double f0 = 0.0;  // INT_0^t alpha(t,s) ds
  double f1 = 0.0;  // INT_0^t alpha(t,s)(t-s) ds
  double f2 = 0.0;  // INT_0^t INT_0^s alpha(t,s) alpha(s,u)(t-s) du ds
};

// Closed forms for the exponential kernel:
//   f0 = (1 - e^{-gamma t})/2
//   f1 = (1 - (1+gamma t) e^{-gamma t})/(2 gamma)
//   f2 = f1/2 - gamma t^2 e^{-gamma t}/8
FFunctions f_functions(double gamma, double t);

// Dephasing model: the memory operator is exactly f0(t) L with
// L = sigma^A_z + kappa sigma^B_z; no noise dependence survives.
Matrix4 obar_dephasing(const ModelParams& p, double t);

// Short-memory perturbative operator
//   (f0 + i omega f1) L - f2 (sigma^A_z + kappa^2 sigma^B_z) L
// for the dissipative L. Stated for a single qubit frequency; throws
// ConfigError when omega_a != omega_b.
Matrix4 obar_post_markov(const ModelParams& p, double t);

}  // namespace nmqsd
