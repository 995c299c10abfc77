#include "nmqsd/o_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace nmqsd {

void ModelParams::validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw ConfigError("kappa must lie in [0, 1]");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ConfigError("gamma must be positive");
  if (!std::isfinite(omega_a) || !std::isfinite(omega_b))
    throw ConfigError("omega must be finite");
}

OCoefficients coeff_derivatives(const OCoefficients& c, const ModelParams& p) {
  const double k = p.kappa;
  const double gam = p.gamma;
  const Complex iwa{0.0, p.omega_a};
  const Complex iwb{0.0, p.omega_b};
  const Complex iq = kImag * c.q;

  OCoefficients d;
  d.a = -gam * c.a + 0.5 * gam + iwa * c.a + c.a * c.a + 2.0 * k * c.f * c.g +
        c.g * c.g - 0.5 * k * iq;
  d.b = -gam * c.b + 0.5 * gam * k + iwb * c.b + k * c.b * c.b +
        2.0 * c.f * c.g + k * c.f * c.f - 0.5 * iq;
  d.f = -gam * c.f + iwb * c.f + c.f * (c.a + c.g) + c.b * (c.g - c.a) +
        2.0 * k * c.b * c.f - 0.5 * iq;
  d.g = -gam * c.g + iwa * c.g + k * c.f * (c.a + c.g) + k * c.b * (c.g - c.a) +
        2.0 * c.a * c.g - 0.5 * k * iq;
  d.q = -2.0 * gam * c.q + (iwa + iwb) * c.q + 2.0 * (c.a + k * c.b) * c.q -
        kImag * gam * (c.f + k * c.g);
  d.log_e = -gam + iwa + iwb + 2.0 * c.a + 2.0 * k * c.b;
  return d;
}

namespace {

OCoefficients axpy(const OCoefficients& c, double h, const OCoefficients& d) {
  OCoefficients out;
  out.a = c.a + h * d.a;
  out.b = c.b + h * d.b;
  out.f = c.f + h * d.f;
  out.g = c.g + h * d.g;
  out.q = c.q + h * d.q;
  out.log_e = c.log_e + h * d.log_e;
  return out;
}

}  // namespace

OCoefficients step_coefficients(const OCoefficients& c, const ModelParams& p,
                                double dt) {
  if (dt * p.gamma > 0.1 + 1e-12)
    throw ConfigError("step_coefficients: dt * gamma must be <= 0.1");
  const OCoefficients k1 = coeff_derivatives(c, p);
  const OCoefficients k2 = coeff_derivatives(axpy(c, 0.5 * dt, k1), p);
  const OCoefficients k3 = coeff_derivatives(axpy(c, 0.5 * dt, k2), p);
  const OCoefficients k4 = coeff_derivatives(axpy(c, dt, k3), p);
  OCoefficients out = c;
  out.a += dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
  out.b += dt / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
  out.f += dt / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
  out.g += dt / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
  out.q += dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  out.log_e += dt / 6.0 * (k1.log_e + 2.0 * k2.log_e + 2.0 * k3.log_e + k4.log_e);
  return out;
}

CoefficientTable tabulate_coefficients(const ModelParams& p, const TimeGrid& grid) {
  p.validate();
  check_grid_resolution(grid, p.gamma);
  CoefficientTable table;
  table.grid = grid;
  table.rows.resize(grid.n_points());
  table.rows[0] = OCoefficients{};
  for (int n = 1; n < grid.n_points(); ++n)
    table.rows[n] = step_coefficients(table.rows[n - 1], p, grid.dt);
  return table;
}

Complex noise_convolution_rate(const OCoefficients& c, const ModelParams& p,
                               Complex x_shifted) {
  return (c.f + p.kappa * c.g) * x_shifted * std::exp(-c.log_e);
}

Matrix4 assemble_obar_dissipative(const OCoefficients& c, const NoiseConvolution& w) {
  const auto finite = [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  };
  if (!finite(c.log_e) || !finite(w.w))
    throw std::domain_error("assemble_obar_dissipative: non-finite propagator state");
  // i * INT P(t,s) xtilde*_s ds = i * (-2i) E(t) W(t) = 2 E(t) W(t)
  const Complex noise_coeff = 2.0 * std::exp(c.log_e) * w.w;
  if (!finite(noise_coeff))
    throw std::domain_error("assemble_obar_dissipative: noise term overflow");
  Matrix4 out = c.a * sigma_minus_a() + c.b * sigma_minus_b() +
                c.f * sigma_za_minus_b() + c.g * sigma_zb_minus_a() +
                noise_coeff * sigma_minus_ab();
  return out;
}

FFunctions f_functions(double gamma, double t) {
  if (t < 0.0) throw std::invalid_argument("f_functions: t must be >= 0");
  const double e = std::exp(-gamma * t);
  FFunctions f;
  f.f0 = 0.5 * (1.0 - e);
  f.f1 = (1.0 - (1.0 + gamma * t) * e) / (2.0 * gamma);
  f.f2 = 0.5 * f.f1 - 0.125 * gamma * t * t * e;
  return f;
}

Matrix4 obar_dephasing(const ModelParams& p, double t) {
  const double f0 = f_functions(p.gamma, t).f0;
  return f0 * collective_dephasing(p.kappa);
}

Matrix4 obar_post_markov(const ModelParams& p, double t) {
  if (p.omega_a != p.omega_b)
    throw ConfigError("obar_post_markov requires omega_a == omega_b");
  const FFunctions f = f_functions(p.gamma, t);
  const Matrix4 lind = collective_lowering(p.kappa);
  const Matrix4 weight =
      sigma_z_a() + p.kappa * p.kappa * sigma_z_b();
  return (f.f0 + kImag * p.omega_a * f.f1) * lind - f.f2 * weight * lind;
}

}  // namespace nmqsd
