#include "nmqsd/qubit_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace nmqsd {

namespace {

Matrix4 kron2(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

void PureState::normalize() {
  const double n = amps.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::runtime_error("PureState::normalize: vanishing or non-finite norm");
  amps /= n;
}

PureState PureState::normalized() const {
  PureState out = *this;
  out.normalize();
  return out;
}

PureState conjugate_state(const PureState& psi) {
  PureState out;
  out.amps = psi.amps.conjugate();
  return out;
}

PureState bell_state(BellKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  PureState out;
  switch (kind) {
    case BellKind::psi_plus:
      out.amps << r, 0, 0, r;
      break;
    case BellKind::psi_minus:
      out.amps << r, 0, 0, -r;
      break;
    case BellKind::phi_plus:
      out.amps << 0, r, r, 0;
      break;
    case BellKind::phi_minus:
      out.amps << 0, r, -r, 0;
      break;
  }
  return out;
}

Complex expectation(const PureState& psi, const Matrix4& op) {
  if (std::abs(psi.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("expectation: state is not normalized");
  return psi.amps.dot(op * psi.amps);  // Eigen's dot conjugates the left factor
}

Matrix4 tensor_product(const Matrix2& a, const Matrix2& b) { return kron2(a, b); }

const Matrix2& identity2() {
  static const Matrix2 m = Matrix2::Identity();
  return m;
}

const Matrix2& pauli_y() {
  static const Matrix2 m = (Matrix2() << 0, -kImag, kImag, 0).finished();
  return m;
}

const Matrix2& pauli_z() {
  static const Matrix2 m = (Matrix2() << 1, 0, 0, -1).finished();
  return m;
}

const Matrix2& pauli_minus() {
  static const Matrix2 m = (Matrix2() << 0, 0, 1, 0).finished();
  return m;
}

const Matrix4& sigma_z_a() {
  static const Matrix4 m = kron2(pauli_z(), identity2());
  return m;
}

const Matrix4& sigma_z_b() {
  static const Matrix4 m = kron2(identity2(), pauli_z());
  return m;
}

const Matrix4& sigma_minus_a() {
  static const Matrix4 m = kron2(pauli_minus(), identity2());
  return m;
}

const Matrix4& sigma_minus_b() {
  static const Matrix4 m = kron2(identity2(), pauli_minus());
  return m;
}

const Matrix4& sigma_yy() {
  static const Matrix4 m = kron2(pauli_y(), pauli_y());
  return m;
}

const Matrix4& sigma_minus_ab() {
  static const Matrix4 m = kron2(pauli_minus(), pauli_minus());
  return m;
}

const Matrix4& sigma_za_minus_b() {
  static const Matrix4 m = kron2(pauli_z(), pauli_minus());
  return m;
}

const Matrix4& sigma_zb_minus_a() {
  static const Matrix4 m = kron2(pauli_minus(), pauli_z());
  return m;
}

Matrix4 collective_lowering(double kappa) {
  return sigma_minus_a() + kappa * sigma_minus_b();
}

Matrix4 collective_dephasing(double kappa) {
  return sigma_z_a() + kappa * sigma_z_b();
}

Matrix4 collective_lindblad(Model model, double kappa) {
  return model == Model::dissipative ? collective_lowering(kappa)
                                     : collective_dephasing(kappa);
}

Matrix4 qubit_hamiltonian(double omega_a, double omega_b) {
  return 0.5 * omega_a * sigma_z_a() + 0.5 * omega_b * sigma_z_b();
}

DensityMatrix projector(const PureState& psi) {
  return psi.amps * psi.amps.adjoint();
}

bool is_hermitian(const DensityMatrix& rho, double tol) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix partial_trace_mode(const DensityMatrix& joint, int fock_dim) {
  if (fock_dim < 1 || joint.rows() != joint.cols() ||
      joint.rows() != 4 * static_cast<Eigen::Index>(fock_dim))
    throw std::invalid_argument("partial_trace_mode: dimension mismatch");
  DensityMatrix out = DensityMatrix::Zero(4, 4);
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p)
      for (int n = 0; n < fock_dim; ++n)
        out(q, p) += joint(q * fock_dim + n, p * fock_dim + n);
  return out;
}

}  // namespace nmqsd
