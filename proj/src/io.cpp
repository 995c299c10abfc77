#include "nmqsd/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace nmqsd {

std::string to_string(Model m) {
  return m == Model::dissipative ? "dissipative" : "dephasing";
}
std::string to_string(OperatorMode m) {
  return m == OperatorMode::exact ? "exact" : "post_markov";
}
std::string to_string(Scheme s) {
  return s == Scheme::euler_maruyama ? "euler_maruyama" : "heun";
}
std::string to_string(BellKind k) {
  switch (k) {
    case BellKind::psi_plus: return "psi+";
    case BellKind::psi_minus: return "psi-";
    case BellKind::phi_plus: return "phi+";
    case BellKind::phi_minus: return "phi-";
  }
  return {};
}
std::string to_string(OracleKind k) {
  switch (k) {
    case OracleKind::none: return "none";
    case OracleKind::pseudomode: return "pseudomode";
    case OracleKind::dephasing_exact: return "dephasing_exact";
    case OracleKind::markov: return "markov";
  }
  return {};
}

Model model_from_string(const std::string& s) {
  if (s == "dissipative") return Model::dissipative;
  if (s == "dephasing") return Model::dephasing;
  throw ConfigError("unknown model: " + s);
}
OperatorMode operator_mode_from_string(const std::string& s) {
  if (s == "exact") return OperatorMode::exact;
  if (s == "post_markov") return OperatorMode::post_markov;
  throw ConfigError("unknown operator mode: " + s);
}
Scheme scheme_from_string(const std::string& s) {
  if (s == "euler_maruyama") return Scheme::euler_maruyama;
  if (s == "heun") return Scheme::heun;
  throw ConfigError("unknown scheme: " + s);
}
BellKind bell_from_string(const std::string& s) {
  if (s == "psi+") return BellKind::psi_plus;
  if (s == "psi-") return BellKind::psi_minus;
  if (s == "phi+") return BellKind::phi_plus;
  if (s == "phi-") return BellKind::phi_minus;
  throw ConfigError("unknown state: " + s + " (expected psi+, psi-, phi+ or phi-)");
}
OracleKind oracle_from_string(const std::string& s) {
  if (s == "none") return OracleKind::none;
  if (s == "pseudomode") return OracleKind::pseudomode;
  if (s == "dephasing_exact") return OracleKind::dephasing_exact;
  if (s == "markov") return OracleKind::markov;
  throw ConfigError("unknown oracle: " + s);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_series_csv(const ConcurrenceSeries& series, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,mean_c,stderr_c,c_rho\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.mean_c[i])
        << ',' << format_double(series.stderr_c[i]) << ',';
    if (series.has_oracle()) out << format_double(series.oracle_c[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

void write_noise_csv(const NoisePath& path_data, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,re,im\n";
  for (int i = 0; i < path_data.grid.n_points(); ++i)
    out << format_double(path_data.grid.time(i)) << ','
        << format_double(path_data.samples[i].real()) << ','
        << format_double(path_data.samples[i].imag()) << '\n';
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

void write_coefficients_csv(const CoefficientTable& table, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,re_a,im_a,re_b,im_b,re_f,im_f,re_g,im_g,re_q,im_q,re_log_e\n";
  for (int i = 0; i < table.grid.n_points(); ++i) {
    const OCoefficients& c = table.rows[i];
    out << format_double(table.grid.time(i));
    for (const Complex z : {c.a, c.b, c.f, c.g, c.q})
      out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    out << ',' << format_double(c.log_e.real()) << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

void write_trajectory_csv(const TrajectoryOutput& traj, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,c";
  for (int k = 0; k < 4; ++k) out << ",re" << k << ",im" << k;
  out << '\n';
  const bool full_states =
      traj.state_stride == 1 && traj.states.size() == traj.times.size();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]) << ',' << format_double(traj.concurrence[i]);
    if (full_states)
      for (int k = 0; k < 4; ++k)
        out << ',' << format_double(traj.states[i].amps(k).real()) << ','
            << format_double(traj.states[i].amps(k).imag());
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

void write_oracle_csv(const OracleCurve& curve, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "t,c_rho\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    out << format_double(curve.times[i]) << ',' << format_double(curve.c_rho[i]) << '\n';
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

nlohmann::json config_to_json(const EnsembleConfig& cfg) {
  nlohmann::json state = nlohmann::json::array();
  for (int k = 0; k < 4; ++k) {
    state.push_back(cfg.sim.initial_state.amps(k).real());
    state.push_back(cfg.sim.initial_state.amps(k).imag());
  }
  return nlohmann::json{{"model", to_string(cfg.sim.model)},
                        {"operator_mode", to_string(cfg.sim.operator_mode)},
                        {"scheme", to_string(cfg.sim.scheme)},
                        {"kappa", cfg.sim.params.kappa},
                        {"gamma", cfg.sim.params.gamma},
                        {"omega_a", cfg.sim.params.omega_a},
                        {"omega_b", cfg.sim.params.omega_b},
                        {"initial_state", state},
                        {"dt", cfg.sim.grid.dt},
                        {"n_steps", cfg.sim.grid.n_steps},
                        {"n_trajectories", cfg.n_trajectories},
                        {"master_seed", cfg.master_seed},
                        {"store_states", cfg.store_states},
                        {"snapshot_stride", cfg.snapshot_stride},
                        {"oracle", to_string(cfg.oracle)},
                        {"oracle_n_max", cfg.oracle_opts.n_max},
                        {"oracle_substeps", cfg.oracle_opts.substeps}};
}

EnsembleConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{
      "model",          "operator_mode", "scheme",        "kappa",
      "gamma",          "omega_a",       "omega_b",       "initial_state",
      "dt",             "n_steps",       "n_trajectories", "master_seed",
      "store_states",   "snapshot_stride", "oracle",      "oracle_n_max",
      "oracle_substeps"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ConfigError("unknown configuration key: " + item.key());
  for (const std::string& key : known)
    if (!j.contains(key))
      throw ConfigError("missing configuration key: " + key);

  EnsembleConfig cfg;
  try {
    cfg.sim.model = model_from_string(j.at("model").get<std::string>());
    cfg.sim.operator_mode =
        operator_mode_from_string(j.at("operator_mode").get<std::string>());
    cfg.sim.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    cfg.sim.params.kappa = j.at("kappa").get<double>();
    cfg.sim.params.gamma = j.at("gamma").get<double>();
    cfg.sim.params.omega_a = j.at("omega_a").get<double>();
    cfg.sim.params.omega_b = j.at("omega_b").get<double>();
    const auto& state = j.at("initial_state");
    if (!state.is_array() || state.size() != 8)
      throw ConfigError("initial_state must hold 8 numbers (re/im pairs)");
    for (int k = 0; k < 4; ++k)
      cfg.sim.initial_state.amps(k) =
          Complex{state[2 * k].get<double>(), state[2 * k + 1].get<double>()};
    cfg.sim.grid.dt = j.at("dt").get<double>();
    cfg.sim.grid.n_steps = j.at("n_steps").get<int>();
    cfg.n_trajectories = j.at("n_trajectories").get<int>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.store_states = j.at("store_states").get<bool>();
    cfg.snapshot_stride = j.at("snapshot_stride").get<int>();
    cfg.oracle = oracle_from_string(j.at("oracle").get<std::string>());
    cfg.oracle_opts.n_max = j.at("oracle_n_max").get<int>();
    cfg.oracle_opts.substeps = j.at("oracle_substeps").get<int>();
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("malformed configuration value: ") + err.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json result_to_json(const EnsembleConfig& cfg, const EnsembleResult& result) {
  nlohmann::json failures = nlohmann::json::array();
  for (const TrajectoryFailure& f : result.failures)
    failures.push_back({{"stream_index", f.stream_index},
                        {"time_index", f.time_index},
                        {"reason", f.reason}});
  nlohmann::json series{{"t", result.series.times},
                        {"mean_c", result.series.mean_c},
                        {"stderr_c", result.series.stderr_c}};
  if (result.series.has_oracle())
    series["c_rho"] = result.series.oracle_c;
  else
    series["c_rho"] = nullptr;
  return nlohmann::json{{"config", config_to_json(cfg)},
                        {"master_seed", cfg.master_seed},
                        {"completed", result.completed},
                        {"failures", failures},
                        {"series", series}};
}

void write_result_json(const EnsembleConfig& cfg, const EnsembleResult& result,
                       const std::string& path) {
  std::ofstream out = open_output(path);
  out << result_to_json(cfg, result).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

EnsembleConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    // The parser reports byte and line positions on failure.
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config parse error in ") + path + ": " + err.what());
  }
  return config_from_json(j);
}

}  // namespace nmqsd
