#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace survkit {

// Derives an independent stream seed from (seed, index) via one SplitMix64
// step. Used everywhere a procedure fans out into substreams (bootstrap
// replicates, forest trees, optimizer restarts, CV arms) so that parallel
// and serial execution consume identical randomness.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic random generator with a fully specified sequence.
//
// Engine: std::mt19937_64, whose output sequence is pinned by the C++
// standard. All variate transforms below are implemented in this class
// (never via std::*_distribution, whose algorithms are implementation
// defined), so a seed identifies the variate sequence exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n): rejection-free via 128-bit style scaling is
  // overkill at desk scale; modulo bias is avoided with rejection.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Marsaglia polar rejection (consumes pairs of
  // uniforms until acceptance; caches the second variate).
  double normal();

  // Exp(1) via inversion.
  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  // Weibull(shape, scale): T = scale * E^(1/shape), E ~ Exp(1).
  double weibull(double shape, double scale) {
    return scale * std::pow(exponential(), 1.0 / shape);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Index draw with probability proportional to `weights` (need not be
  // normalized). CDF inversion; weights must be nonnegative with a positive
  // sum.
  std::size_t discrete(const std::vector<double>& cumulative_weights);

  // Fisher-Yates shuffle of [0, n) indices.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Inclusive running sum used with Rng::discrete.
std::vector<double> cumulative_sum(const std::vector<double>& weights);

}  // namespace survkit
