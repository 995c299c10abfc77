#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nmqsd/types.hpp"

namespace nmqsd {

// Exponentially decaying bath correlation alpha(t,s) = (gamma/2) exp(-gamma|t-s|).
// 1/gamma is the memory time of the driving process.
struct CorrelationKernel {
  double gamma = 1.0;
};

double kernel_eval(const CorrelationKernel& k, double t, double s);

struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  int n_steps = 0;

  int n_points() const { return n_steps + 1; }
  double time(int i) const { return t0 + dt * i; }
  double t_max() const { return time(n_steps); }
};

// Throws ConfigError on non-positive dt or empty grid.
TimeGrid make_grid(double t_max, double dt);

// Grid resolution must resolve the kernel memory: dt * gamma <= 0.1.
void check_grid_resolution(const TimeGrid& grid, double gamma);

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint32_t stream_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

struct NoisePath {
  TimeGrid grid;
  std::vector<Complex> samples;  // one per grid point
};

// Deterministic stream of standard normals derived from a SeedSpec.
// Distinct stream indices give statistically independent streams, so
// trajectory workers never share generator state.
class GaussianStream {
 public:
  explicit GaussianStream(const SeedSpec& seed);

  double next_normal();
  // Circular complex Gaussian: E[|z|^2] = variance, E[z^2] = 0.
  Complex next_complex(double variance);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stationary complex Gaussian path with covariance E[x_m conj(x_n)]
// = (gamma/2) exp(-gamma dt |m-n|) exactly at the grid points and vanishing
// pseudo-covariance E[x_m x_n]. Uses the one-step autoregressive form
//   x_{n+1} = exp(-gamma dt) x_n + xi_n,
//   xi_n circular Gaussian with variance (gamma/2)(1 - exp(-2 gamma dt)),
// which reproduces the kernel with no discretization bias.
NoisePath sample_path(const CorrelationKernel& k, const TimeGrid& grid,
                      const SeedSpec& seed);

// Keeps every factor-th sample; the result is again a valid path for the
// coarser grid (the recursion is Markovian), which is what the step-halving
// convergence checks rely on.
NoisePath decimate(const NoisePath& path, int factor);

// Ensemble average of x_{n+lag} conj(x_n) over all paths and admissible n.
Complex empirical_covariance(std::span<const NoisePath> paths, int lag);
// Same without the conjugate; should vanish for circular noise.
Complex empirical_pseudo_covariance(std::span<const NoisePath> paths, int lag);

}  // namespace nmqsd
