#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pebthresh/multiset_lattice.hpp"
#include "pebthresh/pebbling.hpp"

namespace pebthresh {

/// Reproducible 64-bit generator: SplitMix64 keyed by (seed, stream_id).
/// Distinct stream ids give statistically independent substreams.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next();
  // Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

/// Uniform draw from the C(n+t-1, t) distributions of t pebbles on n vertices.
Distribution sample_uniform_distribution(int n, int t, RngStream& rng);

struct Estimate {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

inline constexpr double kWilsonZ = 1.96;

/// Wilson score interval at the 95% level.
Estimate wilson_estimate(std::uint64_t successes, std::uint64_t samples, double z = kWilsonZ);

struct SamplingConfig {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  // Sample i is drawn from substream stream_base + i / chunk, so the result
  // does not depend on the worker count.
  std::uint64_t chunk = 1024;
  std::uint64_t stream_base = 0;
  unsigned workers = 1;
  std::uint64_t max_states = kDefaultMaxStates;
};

Estimate estimate_solvable_prob(const Graph& g, int t, const SamplingConfig& config);

enum class Solver { Auto, BruteForce };

inline constexpr std::uint64_t kDefaultExactCap = 1'000'000;

/// Fraction of the t-pebble distributions on g that are solvable, by enumeration.
Rational exact_solvable_prob(const Graph& g, int t, Solver solver = Solver::Auto,
                             std::uint64_t cap = kDefaultExactCap);

/// Pr[D_i >= p] for one fixed vertex under the uniform model, <n over t-p> / <n over t>.
/// Zero when p > t.
Rational tail_prob(int n, int t, int p);

/// Pr[a fixed set of m vertices holds no pebbles] = C(t+n-m-1, t) / C(t+n-1, t).
Rational empty_block_prob(int n, int t, int m);
double expected_empty_blocks(int n, int t, int m);

enum class GraphFamily { Path, Cycle, Complete };

GraphFamily parse_family(const std::string& name);
std::string family_name(GraphFamily family);
Graph make_graph(GraphFamily family, int n);

struct ThresholdConfig {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t chunk = 1024;
  unsigned workers = 1;
  int max_t = 1 << 20;
  std::uint64_t max_states = kDefaultMaxStates;
};

struct GridPoint {
  int t;
  Estimate estimate;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct ThresholdEstimate {
  GraphFamily family;
  int n;
  // Smallest t with p_hat >= 1/2 found by the search, equal to t_hi.
  std::optional<int> t_hat;
  // p_hat(t_lo) < 1/2 <= p_hat(t_hi), t_hi = t_lo + 1 after bisection.
  int t_lo;
  std::optional<int> t_hi;
  // False when max_t was reached before some grid point had ci_low > 1/2.
  bool converged;
  std::vector<GridPoint> grid;  // sorted by t

  friend bool operator==(const ThresholdEstimate&, const ThresholdEstimate&) = default;
};

/// Doubling scan t = 1, 2, 4, ... until the Wilson interval sits above 1/2,
/// then bisection between the last point below 1/2 and the first at or above it.
ThresholdEstimate estimate_threshold(GraphFamily family, int n, const ThresholdConfig& config);

}  // namespace pebthresh
