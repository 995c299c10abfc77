#pragma once

#include <span>
#include <vector>

#include "nmqsd/qubit_algebra.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

struct TrajectoryOutput;  // integrator.hpp

// Ensemble concurrence curve: pointwise mean and standard error of the
// per-trajectory concurrence, optionally paired with a deterministic
// reference curve for the same grid.
struct ConcurrenceSeries {
  std::vector<double> times;
  std::vector<double> mean_c;
  std::vector<double> stderr_c;
  std::vector<double> oracle_c;  // empty when no reference attached

  bool has_oracle() const { return !oracle_c.empty(); }
};

// |<psi| sigma_y (x) sigma_y |psi*>| for a normalized two-qubit state;
// equals 2|a d - b c| in the computational basis.
double concurrence_pure(const PureState& psi);

// Mixed-state concurrence max{0, sqrt(l1)-sqrt(l2)-sqrt(l3)-sqrt(l4)} from
// the eigenvalues of rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y) in
// descending order. Eigenvalues with |Im| or negative real part up to 1e-7
// are clamped; values of magnitude <= 1e-9 are treated as exact zeros.
// Larger violations signal an invalid density matrix (std::invalid_argument).
double concurrence_mixed(const DensityMatrix& rho);

// Pointwise sample mean / standard error over >= 2 trajectories on one grid.
ConcurrenceSeries mean_concurrence(std::span<const TrajectoryOutput> trajectories);

// Average of projectors |psi><psi| of normalized states.
DensityMatrix rho_from_ensemble(std::span<const PureState> states);

}  // namespace nmqsd
