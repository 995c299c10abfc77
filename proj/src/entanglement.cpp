#include "nmqsd/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nmqsd/integrator.hpp"

namespace nmqsd {

double concurrence_pure(const PureState& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("concurrence_pure: state is not normalized");
  const Vector4& a = psi.amps;
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("concurrence_mixed: expected a 4x4 matrix");
  const Matrix4 r = rho;
  const Matrix4 spin_flipped = sigma_yy() * r.conjugate() * sigma_yy();
  const Matrix4 product = r * spin_flipped;
  Eigen::ComplexEigenSolver<Matrix4> es(product, false);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) {
    const Complex z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-7 || z.real() < -1e-7)
      throw std::invalid_argument(
          "concurrence_mixed: eigenvalue far from the positive axis; "
          "input is not a valid density matrix");
    double x = z.real();
    if (std::abs(x) <= 1e-9) x = 0.0;  // spectral noise of exact zeros
    lam[i] = std::max(x, 0.0);
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const double c = std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) -
                   std::sqrt(lam[3]);
  return std::max(0.0, c);
}

ConcurrenceSeries mean_concurrence(std::span<const TrajectoryOutput> trajectories) {
  if (trajectories.size() < 2)
    throw std::invalid_argument("mean_concurrence: need at least 2 trajectories");
  const auto& ref = trajectories.front().times;
  for (const TrajectoryOutput& t : trajectories)
    if (t.times != ref)
      throw std::invalid_argument("mean_concurrence: mismatched grids");

  const std::size_t n_t = ref.size();
  const double n = static_cast<double>(trajectories.size());
  ConcurrenceSeries out;
  out.times = ref;
  out.mean_c.assign(n_t, 0.0);
  out.stderr_c.assign(n_t, 0.0);
  for (const TrajectoryOutput& t : trajectories)
    for (std::size_t i = 0; i < n_t; ++i) out.mean_c[i] += t.concurrence[i];
  for (std::size_t i = 0; i < n_t; ++i) out.mean_c[i] /= n;
  for (const TrajectoryOutput& t : trajectories)
    for (std::size_t i = 0; i < n_t; ++i) {
      const double d = t.concurrence[i] - out.mean_c[i];
      out.stderr_c[i] += d * d;
    }
  for (std::size_t i = 0; i < n_t; ++i)
    out.stderr_c[i] = std::sqrt(out.stderr_c[i] / (n - 1.0) / n);
  return out;
}

DensityMatrix rho_from_ensemble(std::span<const PureState> states) {
  if (states.empty())
    throw std::invalid_argument("rho_from_ensemble: empty collection");
  DensityMatrix rho = DensityMatrix::Zero(4, 4);
  for (const PureState& s : states) rho += projector(s);
  return rho / static_cast<double>(states.size());
}

}  // namespace nmqsd
