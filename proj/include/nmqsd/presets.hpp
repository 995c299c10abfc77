#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nmqsd/ensemble.hpp"

namespace nmqsd {

// Canned experiment configurations:
//   fig1a/b  dissipative, kappa=1, gamma=0.3, exact vs post-Markov vs reference
//   fig2a/b  dissipative Psi+ sweeps (kappa at gamma=0.3 / gamma at kappa=1)
//   fig3a/b  dissipative Phi+ sweeps (kappa at gamma=0.3, long run / gamma at kappa=0.25)
//   fig4a/b  dephasing Psi+ sweeps (kappa at gamma=1 / gamma at kappa=1)
//   fig5a/b  dephasing Phi+ sweeps (kappa at gamma=1 / gamma at kappa=0.25)
// Sweep value lists, time extents and the qubit frequency are project
// defaults.
struct ExperimentPreset {
  std::string name;
  std::string description;
  EnsembleConfig config;
  std::optional<SweepParameter> sweep_param;
  std::vector<double> sweep_values;
  bool compare_operator_modes = false;
};

ExperimentPreset make_preset(const std::string& name);  // throws ConfigError
const std::vector<std::string>& preset_names();

}  // namespace nmqsd
