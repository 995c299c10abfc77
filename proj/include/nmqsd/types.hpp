#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace nmqsd {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
// Density operators may live on the bare two-qubit space (4x4) or on the
// qubits-plus-mode space used by the pseudomode reference (4*(n_max+1)).
using DensityMatrix = Eigen::MatrixXcd;

constexpr Complex kImag{0.0, 1.0};

enum class Model { dissipative, dephasing };
enum class OperatorMode { exact, post_markov };
enum class Scheme { euler_maruyama, heun };
enum class BellKind { psi_plus, psi_minus, phi_plus, phi_minus };
enum class OracleKind { none, pseudomode, dephasing_exact, markov };

std::string to_string(Model m);
std::string to_string(OperatorMode m);
std::string to_string(Scheme s);
std::string to_string(BellKind k);
std::string to_string(OracleKind k);

Model model_from_string(const std::string& s);
OperatorMode operator_mode_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);
BellKind bell_from_string(const std::string& s);
OracleKind oracle_from_string(const std::string& s);

// Thrown on invalid configuration input (bad ranges, unknown names, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace nmqsd
