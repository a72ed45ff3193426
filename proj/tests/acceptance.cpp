// Acceptance criteria. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any fails. A criterion fails when its property fails or when it
// runs past its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pebthresh/multiset_lattice.hpp"
#include "pebthresh/pebbling.hpp"
#include "pebthresh/random_experiments.hpp"
#include "pebthresh/shadow_compression.hpp"
#include "pebthresh/verification.hpp"

using namespace pebthresh;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> check;
};

unsigned worker_count() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string reports_detail(const std::vector<std::pair<const SweepReport*, std::string>>& reports) {
  std::string out;
  for (const auto& [r, unit] : reports) {
    if (!out.empty()) out += "; ";
    out += r->property + " " + r->summary(unit);
    if (!r->counterexamples.empty()) out += " (e.g. " + r->counterexamples.front() + ")";
  }
  return out;
}

bool all_ok(const std::vector<std::pair<const SweepReport*, std::string>>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.first->ok(); });
}

constexpr std::uint64_t kSeed = 0;

Outcome ac1() {
  const auto exhaustive = verify_cl_exhaustive(3, 3, {1});
  const auto random = verify_cl_random(4, 4, 100000, {1, 2}, kSeed);
  const std::vector<std::pair<const SweepReport*, std::string>> reps{{&exhaustive, "families"},
                                                                     {&random, "families"}};
  return {all_ok(reps) && exhaustive.checked == 1024 && random.checked == 100000, reports_detail(reps)};
}

Outcome ac2() {
  const auto exhaustive = verify_lovasz_exhaustive(3, 3);
  const auto random = verify_lovasz_random(4, 4, 100000, kSeed);
  const auto tight = verify_lovasz_tight(5, 5);
  const std::vector<std::pair<const SweepReport*, std::string>> reps{
      {&exhaustive, "families"}, {&random, "families"}, {&tight, "full levels"}};
  return {all_ok(reps) && exhaustive.checked == 1024 && random.checked == 100000, reports_detail(reps)};
}

Outcome ac3() {
  const auto sweep = verify_compression_random(5, 5, 10000, kSeed);
  const std::vector<std::pair<const SweepReport*, std::string>> reps{{&sweep.shadow_monotone, "triples"},
                                                                     {&sweep.compressed_lemma, "families"}};
  return {all_ok(reps) && sweep.shadow_monotone.checked == 10000, reports_detail(reps)};
}

Outcome ac4() {
  const auto r = verify_greedy_vs_bruteforce(5, 6);
  return {r.ok() && r.checked > 0, reports_detail({{&r, "checks"}})};
}

Outcome ac5() {
  const auto cert = verify_weight_certificate(6, 8);
  const auto witness = verify_empty_block_witness(6, 8);
  const auto suff = verify_block_sufficiency(6, 2, 12);
  const std::vector<std::pair<const SweepReport*, std::string>> reps{
      {&cert, "checks"}, {&witness, "checks"}, {&suff, "checks"}};
  // the sufficiency sweep is only meaningful if it met positive instances
  std::uint64_t positives = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t <= 12; ++t) {
      for (const auto& c : oracle::level(n, t)) {
        for (int m = 1; m <= std::min(2, n); ++m) positives += block_sufficiency_solvable(Distribution(c), m);
      }
    }
  }
  return {all_ok(reps) && positives > 0,
          reports_detail(reps) + " (" + std::to_string(positives) + " sufficiency positives)"};
}

Outcome ac6() {
  std::uint64_t exact_checks = 0;
  std::uint64_t exact_fail = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int r = 0; r <= 6; ++r) {
      const auto cells = oracle::level(n, r);
      for (int b = 1; b <= r; ++b) {
        std::uint64_t hits = 0;
        for (const auto& c : cells) hits += c.back() < b;
        ++exact_checks;
        exact_fail += prob_M(n, r, b) != Rational(hits, cells.size());
      }
      for (int b = 1; b <= n - 1; ++b) {
        std::uint64_t hits = 0;
        for (const auto& c : cells) {
          bool absent = true;
          for (int i = n - b; i < n; ++i) absent = absent && c[static_cast<std::size_t>(i)] == 0;
          hits += absent;
        }
        ++exact_checks;
        exact_fail += prob_N(n, r, b) != Rational(hits, cells.size());
      }
    }
  }

  // Bounds are evaluated in floating point; 1e-12 absorbs rounding in exp and log.
  constexpr double slack = 1e-12;
  std::uint64_t chain_checks = 0;
  std::uint64_t chain_fail = 0;
  std::string first_failure;
  auto chain = [&](double lower, double value, double upper, const char* what, int n, int r, int b) {
    chain_checks += 2;
    const int bad = (value < lower - slack) + (value > upper + slack);
    if (bad && first_failure.empty()) {
      std::ostringstream os;
      os << what << "(" << n << "," << r << "," << b << ")";
      first_failure = os.str();
    }
    chain_fail += static_cast<std::uint64_t>(bad);
  };
  for (int n = 1; n <= 200; ++n) {
    for (int r = 0; r <= 200; ++r) {
      for (int b = 1; b <= r; ++b) {
        const Bounds bd = prob_M_bounds(n, r, b);
        chain(bd.lower, prob_M_value(n, r, b), bd.upper, "M", n, r, b);
      }
      for (int b = 1; b <= n - 1; ++b) {
        const Bounds bd = prob_N_bounds(n, r, b);
        chain(bd.lower, prob_N_value(n, r, b), bd.upper, "N", n, r, b);
      }
    }
  }
  std::ostringstream os;
  os << "exact " << exact_checks - exact_fail << "/" << exact_checks << " triples match enumeration; bound chains "
     << chain_checks - chain_fail << "/" << chain_checks << " hold";
  if (!first_failure.empty()) os << " (first failure " << first_failure << ")";
  return {exact_fail == 0 && chain_fail == 0, os.str()};
}

Outcome ac7() {
  std::uint64_t checks = 0;
  std::uint64_t fail = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t <= 6; ++t) {
      const auto cells = oracle::level(n, t);
      for (int p = 0; p <= t + 1; ++p) {
        std::uint64_t hits = 0;
        for (const auto& c : cells) hits += c[0] >= p;
        ++checks;
        fail += tail_prob(n, t, p) != Rational(hits, cells.size());
      }
      for (int m = 1; m <= n; ++m) {
        std::uint64_t hits = 0;
        for (const auto& c : cells) hits += std::all_of(c.begin(), c.begin() + m, [](int x) { return x == 0; });
        ++checks;
        fail += empty_block_prob(n, t, m) != Rational(hits, cells.size());
      }
    }
  }
  return {fail == 0, std::to_string(checks - fail) + "/" + std::to_string(checks) + " values match enumeration"};
}

Outcome ac8() {
  struct Config {
    std::string name;
    Graph graph;
    int max_t;
  };
  const std::vector<Config> configs{{"P_2", Graph::path(2), 4}, {"P_3", Graph::path(3), 6}, {"C_4", Graph::cycle(4), 5}};
  constexpr int repeats = 100;
  constexpr int required = 99;
  bool pass = true;
  std::ostringstream os;
  os << "covered repeats per (graph,t):";
  for (const auto& cfg : configs) {
    for (int t = 0; t <= cfg.max_t; ++t) {
      const double exact = exact_solvable_prob(cfg.graph, t).convert_to<double>();
      int covered = 0;
      for (int seed = 0; seed < repeats; ++seed) {
        SamplingConfig sc;
        sc.samples = 20000;
        sc.seed = static_cast<std::uint64_t>(seed);
        sc.workers = worker_count();
        const Estimate e = estimate_solvable_prob(cfg.graph, t, sc);
        covered += e.ci_low <= exact && exact <= e.ci_high;
      }
      pass = pass && covered >= required;
      os << " " << cfg.name << "/" << t << "=" << covered;
    }
  }
  os << " (need >= " << required << " of " << repeats << " each)";
  return {pass, os.str()};
}

ThresholdEstimate threshold(GraphFamily family, int n, std::uint64_t samples, std::uint64_t seed) {
  ThresholdConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = worker_count();
  return estimate_threshold(family, n, cfg);
}

Outcome ac9() {
  std::vector<double> t_hat;
  std::ostringstream os;
  bool pass = true;
  for (int n : {16, 64, 256}) {
    const auto est = threshold(GraphFamily::Complete, n, 2000, 7);
    pass = pass && est.t_hat.has_value();
    t_hat.push_back(est.t_hat ? *est.t_hat : NAN);
    os << "t_hat(" << n << ")=" << (est.t_hat ? std::to_string(*est.t_hat) : "none") << " ";
  }
  for (std::size_t i = 1; i < t_hat.size(); ++i) {
    const double ratio = t_hat[i] / t_hat[i - 1];
    pass = pass && ratio >= 1.4 && ratio <= 2.9;
    char buf[64];
    std::snprintf(buf, sizeof buf, "ratio=%.3f ", ratio);
    os << buf;
  }
  return {pass, os.str() + "(need ratios in [1.4, 2.9])"};
}

Outcome ac10() {
  std::ostringstream os;
  bool pass = true;
  double previous = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const auto est = threshold(GraphFamily::Path, n, 1000, kSeed);
    if (!est.t_hat) {
      pass = false;
      os << "t_hat(" << n << ")=none ";
      continue;
    }
    const double t = *est.t_hat;
    const double per_vertex = t / n;
    pass = pass && t >= n && t <= std::pow(n, 1.6) && per_vertex >= previous;
    previous = per_vertex;
    char buf[96];
    std::snprintf(buf, sizeof buf, "t_hat(%d)=%d (t/n=%.3f, n^1.6=%.1f) ", n, *est.t_hat, per_vertex, std::pow(n, 1.6));
    os << buf;
  }
  return {pass, os.str() + "(need n <= t_hat <= n^1.6, t_hat/n non-decreasing)"};
}

Outcome ac11() {
  const auto r = verify_monotonicity(4, 5);
  return {r.ok() && r.checked > 0, reports_detail({{&r, "checks"}})};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Clements-Lindstrom shadow bound", 60, ac1},
      {"AC2", "Lovasz-type shadow bound", 60, ac2},
      {"AC3", "compression lemma", 30, ac3},
      {"AC4", "path greedy equals brute force", 30, ac4},
      {"AC5", "certificates sound", 60, ac5},
      {"AC6", "reference family probabilities and bounds", 30, ac6},
      {"AC7", "tail and empty-block formulas", 10, ac7},
      {"AC8", "Monte Carlo coverage of exact probabilities", 300, ac8},
      {"AC9", "complete-graph threshold scaling", 300, ac9},
      {"AC10", "path threshold bracket", 1200, ac10},
      {"AC11", "solvability monotone in pebbles", 30, ac11},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::printf("[%s] %s %s: %s | %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                outcome.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
