#include "nmqsd/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmqsd {

double kernel_eval(const CorrelationKernel& k, double t, double s) {
  return 0.5 * k.gamma * std::exp(-k.gamma * std::abs(t - s));
}

TimeGrid make_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ConfigError("make_grid: dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw ConfigError("make_grid: t_max must be positive");
  const int n = static_cast<int>(std::lround(t_max / dt));
  if (n < 1) throw ConfigError("make_grid: grid has no steps");
  return TimeGrid{0.0, dt, n};
}

void check_grid_resolution(const TimeGrid& grid, double gamma) {
  if (!(grid.dt > 0.0) || grid.n_steps < 1)
    throw ConfigError("invalid time grid");
  if (grid.dt * gamma > 0.1 + 1e-12)
    throw ConfigError("grid too coarse: dt * gamma must be <= 0.1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

GaussianStream::GaussianStream(const SeedSpec& seed) {
  // Decorrelate nearby (master, stream) pairs before seeding the engine.
  const std::uint64_t a = splitmix64(seed.master_seed);
  const std::uint64_t b =
      splitmix64(a ^ (0x9e3779b97f4a7c15ull * (seed.stream_index + 1ull)));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    seed.stream_index};
  engine_.seed(seq);
}

double GaussianStream::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] uniforms.
  const double inv = 1.0 / 18446744073709551616.0;  // 2^-64
  const double u1 = (static_cast<double>(engine_()) + 1.0) * inv;
  const double u2 = static_cast<double>(engine_()) * inv;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  have_spare_ = true;
  return r * std::cos(phi);
}

Complex GaussianStream::next_complex(double variance) {
  const double s = std::sqrt(0.5 * variance);
  return Complex{s * next_normal(), s * next_normal()};
}

NoisePath sample_path(const CorrelationKernel& k, const TimeGrid& grid,
                      const SeedSpec& seed) {
  check_grid_resolution(grid, k.gamma);
  GaussianStream rng(seed);
  NoisePath path;
  path.grid = grid;
  path.samples.resize(grid.n_points());
  const double decay = std::exp(-k.gamma * grid.dt);
  const double stationary_var = 0.5 * k.gamma;
  const double innovation_var = stationary_var * (1.0 - decay * decay);
  path.samples[0] = rng.next_complex(stationary_var);
  for (int n = 1; n < grid.n_points(); ++n)
    path.samples[n] = decay * path.samples[n - 1] + rng.next_complex(innovation_var);
  return path;
}

NoisePath decimate(const NoisePath& path, int factor) {
  if (factor < 1 || path.grid.n_steps % factor != 0)
    throw std::invalid_argument("decimate: factor must divide n_steps");
  NoisePath out;
  out.grid = TimeGrid{path.grid.t0, path.grid.dt * factor, path.grid.n_steps / factor};
  out.samples.resize(out.grid.n_points());
  for (int n = 0; n < out.grid.n_points(); ++n)
    out.samples[n] = path.samples[n * factor];
  return out;
}

namespace {

Complex lagged_product_mean(std::span<const NoisePath> paths, int lag, bool conjugate) {
  if (paths.size() < 2)
    throw std::invalid_argument("empirical covariance needs at least 2 paths");
  const TimeGrid& grid = paths.front().grid;
  for (const NoisePath& p : paths)
    if (p.grid.dt != grid.dt || p.grid.n_steps != grid.n_steps)
      throw std::invalid_argument("empirical covariance: mismatched grids");
  if (lag < 0 || lag > grid.n_steps)
    throw std::invalid_argument("empirical covariance: lag out of range");
  Complex acc{0.0, 0.0};
  const int terms = grid.n_points() - lag;
  for (const NoisePath& p : paths) {
    Complex path_acc{0.0, 0.0};
    for (int n = 0; n < terms; ++n) {
      const Complex rhs = conjugate ? std::conj(p.samples[n]) : p.samples[n];
      path_acc += p.samples[n + lag] * rhs;
    }
    acc += path_acc / static_cast<double>(terms);
  }
  return acc / static_cast<double>(paths.size());
}

}  // namespace

Complex empirical_covariance(std::span<const NoisePath> paths, int lag) {
  return lagged_product_mean(paths, lag, true);
}

Complex empirical_pseudo_covariance(std::span<const NoisePath> paths, int lag) {
  return lagged_product_mean(paths, lag, false);
}

}  // namespace nmqsd
