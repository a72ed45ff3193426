#include "pebthresh/random_experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "pebthresh/errors.hpp"

namespace pebthresh {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix(s);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), state_(mix(seed ^ mix(stream_id ^ 0x5bd1e9955bd1e995ULL))) {}

std::uint64_t RngStream::next() { return splitmix(state_); }

// Lemire's multiply-shift with rejection; exact uniformity, platform independent.
std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("RngStream::below: zero bound");
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Stars and bars: a uniform t-subset of the n+t-1 slots marks the pebbles, the
// rest are the n-1 bars between vertices. Floyd's algorithm picks whichever of
// the two subsets is smaller; the complement of a uniform subset is uniform.
Distribution sample_uniform_distribution(int n, int t, RngStream& rng) {
  if (n < 1) throw DomainError("sample_uniform_distribution: n must be positive");
  if (t < 0) throw DomainError("sample_uniform_distribution: negative t");
  const auto slots = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(t) - 1;
  const bool pick_pebbles = t <= n - 1;
  const std::uint64_t k = pick_pebbles ? static_cast<std::uint64_t>(t) : static_cast<std::uint64_t>(n - 1);
  std::vector<char> marked(slots, 0);
  for (std::uint64_t j = slots - k; j < slots; ++j) {
    const std::uint64_t r = rng.below(j + 1);
    if (marked[r]) {
      marked[j] = 1;
    } else {
      marked[r] = 1;
    }
  }
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  std::size_t vertex = 0;
  for (std::uint64_t s = 0; s < slots; ++s) {
    const bool pebble = (marked[s] != 0) == pick_pebbles;
    if (pebble) {
      ++counts[vertex];
    } else {
      ++vertex;
    }
  }
  return Distribution(std::move(counts));
}

Estimate wilson_estimate(std::uint64_t successes, std::uint64_t samples, double z) {
  if (samples == 0) throw DomainError("wilson_estimate: no samples");
  if (successes > samples) throw DomainError("wilson_estimate: more successes than samples");
  const double nn = static_cast<double>(samples);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Estimate e;
  e.p_hat = p;
  e.ci_low = std::clamp(std::min(center - half, p), 0.0, 1.0);
  e.ci_high = std::clamp(std::max(center + half, p), 0.0, 1.0);
  e.samples = samples;
  e.successes = successes;
  return e;
}

Estimate estimate_solvable_prob(const Graph& g, int t, const SamplingConfig& config) {
  if (config.samples == 0) throw DomainError("estimate_solvable_prob: samples must be positive");
  if (config.chunk == 0) throw DomainError("estimate_solvable_prob: chunk must be positive");
  const std::uint64_t chunks = (config.samples + config.chunk - 1) / config.chunk;
  const unsigned workers =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(config.workers, chunks)));

  std::vector<std::uint64_t> successes(workers, 0);
  std::vector<std::uint64_t> done(workers, 0);
  std::vector<std::exception_ptr> errors(workers);

  auto run = [&](unsigned w) {
    try {
      for (std::uint64_t c = w; c < chunks; c += workers) {
        RngStream rng(config.seed, config.stream_base + c);
        const std::uint64_t begin = c * config.chunk;
        const std::uint64_t end = std::min(config.samples, begin + config.chunk);
        for (std::uint64_t i = begin; i < end; ++i) {
          const Distribution d = sample_uniform_distribution(g.order(), t, rng);
          if (is_solvable(g, d, config.max_states)) ++successes[w];
          ++done[w];
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& th : threads) th.join();
  }

  std::uint64_t total_success = 0;
  std::uint64_t total_done = 0;
  for (unsigned w = 0; w < workers; ++w) {
    total_success += successes[w];
    total_done += done[w];
  }
  for (const auto& err : errors) {
    if (!err) continue;
    try {
      std::rethrow_exception(err);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + " (aborted after " + std::to_string(total_done) +
                          " samples, " + std::to_string(total_success) + " solvable)");
    }
  }
  return wilson_estimate(total_success, config.samples);
}

Rational exact_solvable_prob(const Graph& g, int t, Solver solver, std::uint64_t cap) {
  const auto level = enumerate_level(g.order(), t, cap);
  std::uint64_t solvable = 0;
  for (const auto& d : level) {
    const bool ok = solver == Solver::BruteForce ? is_solvable_bruteforce(g, d) : is_solvable(g, d);
    if (ok) ++solvable;
  }
  return Rational(BigCount(solvable), BigCount(level.size()));
}

Rational tail_prob(int n, int t, int p) {
  if (n < 1 || t < 0 || p < 0) throw DomainError("tail_prob: need n >= 1, t >= 0, p >= 0");
  if (p > t) return 0;
  return Rational(multichoose(n, t - p), multichoose(n, t));
}

Rational empty_block_prob(int n, int t, int m) {
  if (m < 1 || m > n) throw DomainError("empty_block_prob: need 1 <= m <= n");
  if (t < 0) throw DomainError("empty_block_prob: negative t");
  if (t == 0) return 1;
  if (m == n) return 0;
  return Rational(multichoose(n - m, t), multichoose(n, t));
}

double expected_empty_blocks(int n, int t, int m) {
  return static_cast<double>(n / m) * empty_block_prob(n, t, m).convert_to<double>();
}

GraphFamily parse_family(const std::string& name) {
  if (name == "path") return GraphFamily::Path;
  if (name == "cycle") return GraphFamily::Cycle;
  if (name == "complete") return GraphFamily::Complete;
  throw DomainError("unknown graph family '" + name + "' (expected path, cycle or complete)");
}

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::Path:
      return "path";
    case GraphFamily::Cycle:
      return "cycle";
    case GraphFamily::Complete:
      return "complete";
  }
  return "unknown";
}

Graph make_graph(GraphFamily family, int n) {
  switch (family) {
    case GraphFamily::Path:
      return Graph::path(n);
    case GraphFamily::Cycle:
      return Graph::cycle(n);
    case GraphFamily::Complete:
      return Graph::complete(n);
  }
  throw DomainError("unknown graph family");
}

ThresholdEstimate estimate_threshold(GraphFamily family, int n, const ThresholdConfig& config) {
  const Graph g = make_graph(family, n);
  std::map<int, Estimate> grid;

  auto evaluate = [&](int t) -> const Estimate& {
    auto it = grid.find(t);
    if (it != grid.end()) return it->second;
    SamplingConfig sc;
    sc.samples = config.samples;
    sc.seed = config.seed;
    sc.chunk = config.chunk;
    sc.stream_base = static_cast<std::uint64_t>(t) << 32;
    sc.workers = config.workers;
    sc.max_states = config.max_states;
    return grid.emplace(t, estimate_solvable_prob(g, t, sc)).first->second;
  };

  evaluate(0);
  bool converged = false;
  for (int t = 1; t <= config.max_t; t = t > config.max_t / 2 ? config.max_t + 1 : t * 2) {
    if (evaluate(t).ci_low > 0.5) {
      converged = true;
      break;
    }
  }

  ThresholdEstimate result{family, n, std::nullopt, 0, std::nullopt, converged, {}};

  // Narrow to the last point below 1/2 and the next grid point above it.
  std::optional<int> hi;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    if (it->second.p_hat >= 0.5) {
      hi = it->first;
    } else if (hi) {
      break;
    }
  }
  if (!hi) {
    result.t_lo = grid.rbegin()->first;
  } else {
    int lo = 0;
    for (const auto& [t, e] : grid) {
      if (t < *hi && e.p_hat < 0.5) lo = t;
    }
    int h = *hi;
    while (h - lo > 1) {
      const int mid = lo + (h - lo) / 2;
      if (evaluate(mid).p_hat >= 0.5) {
        h = mid;
      } else {
        lo = mid;
      }
    }
    result.t_lo = lo;
    result.t_hi = h;
    result.t_hat = h;
  }

  for (const auto& [t, e] : grid) result.grid.push_back({t, e});
  return result;
}

}  // namespace pebthresh
