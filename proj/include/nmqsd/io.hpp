#pragma once

#include <string>

#include <json.hpp>

#include "nmqsd/ensemble.hpp"
#include "nmqsd/types.hpp"

namespace nmqsd {

// Round-trip-safe decimal form of a double (17 significant digits).
std::string format_double(double x);

// Columns: t,mean_c,stderr_c,c_rho. The last column is left empty when the
// series carries no reference curve.
void write_series_csv(const ConcurrenceSeries& series, const std::string& path);

// Path of one sampled noise realization: t,re,im.
void write_noise_csv(const NoisePath& path_data, const std::string& path);

// Coefficient curves: t, Re/Im of a,b,f,g,q and Re(log_e).
void write_coefficients_csv(const CoefficientTable& table, const std::string& path);

// Single unraveling: t,c,re0,im0,...,re3,im3.
void write_trajectory_csv(const TrajectoryOutput& out, const std::string& path);

// Deterministic reference curve alone: t,c_rho.
void write_oracle_csv(const OracleCurve& curve, const std::string& path);

// Configuration echo; config_from_json(config_to_json(c)) == c. Unknown or
// missing keys are rejected with a descriptive ConfigError.
nlohmann::json config_to_json(const EnsembleConfig& cfg);
EnsembleConfig config_from_json(const nlohmann::json& j);

// Full result document: config echo, seed, completion count, failures and
// the series (c_rho null when absent). Byte-deterministic for a fixed result.
nlohmann::json result_to_json(const EnsembleConfig& cfg, const EnsembleResult& result);
void write_result_json(const EnsembleConfig& cfg, const EnsembleResult& result,
                       const std::string& path);

// Reads and validates a configuration file, reporting parse errors with
// line information.
EnsembleConfig load_config_file(const std::string& path);

}  // namespace nmqsd
