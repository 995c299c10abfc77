#pragma once

#include <span>

#include "nmqsd/types.hpp"

namespace nmqsd {

// Two-qubit state in the fixed computational basis
//   index 0: |up,up>, 1: |up,down>, 2: |down,up>, 3: |down,down>
// with sigma_z|up> = +|up> and sigma_-|up> = |down>. Qubit A is the first
// tensor factor. Conjugation and concurrence are defined relative to this
// basis, so the ordering is normative for the whole code base.
struct PureState {
  Vector4 amps = Vector4::Zero();

  double norm() const { return amps.norm(); }
  // Rescales to unit norm; throws std::runtime_error on vanishing norm.
  void normalize();
  PureState normalized() const;
};

// Entrywise complex conjugation in the computational basis.
PureState conjugate_state(const PureState& psi);

PureState bell_state(BellKind kind);

// <psi|op|psi>. Requires |norm(psi) - 1| <= 1e-6.
Complex expectation(const PureState& psi, const Matrix4& op);

// Kronecker product of two single-qubit operators, qubit A first.
Matrix4 tensor_product(const Matrix2& a, const Matrix2& b);

const Matrix2& identity2();
const Matrix2& pauli_y();
const Matrix2& pauli_z();
const Matrix2& pauli_minus();

const Matrix4& sigma_z_a();
const Matrix4& sigma_z_b();
const Matrix4& sigma_minus_a();
const Matrix4& sigma_minus_b();
const Matrix4& sigma_yy();          // sigma_y (x) sigma_y
const Matrix4& sigma_minus_ab();    // sigma^A_- sigma^B_-
const Matrix4& sigma_za_minus_b();  // sigma^A_z sigma^B_-
const Matrix4& sigma_zb_minus_a();  // sigma^B_z sigma^A_-

// sigma^A_- + kappa sigma^B_-
Matrix4 collective_lowering(double kappa);
// sigma^A_z + kappa sigma^B_z
Matrix4 collective_dephasing(double kappa);
Matrix4 collective_lindblad(Model model, double kappa);

// (omega_a/2) sigma^A_z + (omega_b/2) sigma^B_z
Matrix4 qubit_hamiltonian(double omega_a, double omega_b);

DensityMatrix projector(const PureState& psi);

bool is_hermitian(const DensityMatrix& rho, double tol);
double min_eigenvalue(const DensityMatrix& rho);
// (1/2) * sum of |eigenvalues| of (a - b); a, b Hermitian.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Reduces a joint qubits (x) mode state to the qubit part; the bosonic mode
// is the trailing tensor factor of dimension fock_dim.
DensityMatrix partial_trace_mode(const DensityMatrix& joint, int fock_dim);

}  // namespace nmqsd
