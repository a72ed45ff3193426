#include "pebthresh/verification.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <sstream>

#include "pebthresh/errors.hpp"
#include "pebthresh/shadow_compression.hpp"

namespace pebthresh {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

std::string describe(const LevelFamily& f) {
  std::ostringstream os;
  os << "n=" << f.ground_size() << " t=" << f.level() << " {";
  bool first = true;
  for (const auto& m : f) {
    os << (first ? "" : " ") << m.to_string();
    first = false;
  }
  os << '}';
  return os.str();
}

std::string describe(const Distribution& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.ground_size(); ++i) os << (i ? "," : "") << d.counts()[i];
  os << ')';
  return os.str();
}

std::vector<Multiset> checked_level(int n, int t) {
  if (multichoose(n, t) > kMaxExhaustiveLevel) {
    throw SizeError("exhaustive sweep over M_" + std::to_string(n) + "(" + std::to_string(t) +
                    ") needs 2^" + multichoose(n, t).str() + " families");
  }
  return enumerate_level(n, t);
}

// Memoized |shadow^k(initial segment of size s)|.
class ClTable {
 public:
  std::size_t get(int n, int t, std::size_t s, int k) {
    const auto key = std::make_tuple(n, t, s, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto v = static_cast<std::size_t>(cl_min_shadow(n, t, BigCount(s), k));
    cache_.emplace(key, v);
    return v;
  }

 private:
  std::map<std::tuple<int, int, std::size_t, int>, std::size_t> cache_;
};

bool cl_holds(const LevelFamily& f, const std::vector<int>& ks, ClTable& table, std::string& why) {
  for (int k : ks) {
    if (k > f.level()) continue;
    const std::size_t actual = iterated_shadow(f, k).size();
    const std::size_t least = table.get(f.ground_size(), f.level(), f.size(), k);
    if (actual < least) {
      why = describe(f) + " k=" + std::to_string(k) + ": |shadow|=" + std::to_string(actual) +
            " < " + std::to_string(least);
      return false;
    }
  }
  return true;
}

std::string lovasz_detail(const LevelFamily& f, const LovaszCheck& c) {
  std::ostringstream os;
  os << describe(f) << " x=" << c.x << " bound=" << c.bound << " actual=" << c.actual;
  return os.str();
}

bool compressed_lemma_holds(const LevelFamily& f) {
  return shadow(f).size() == first_column(f).size() && compressed_containments_hold(f);
}

void for_each_distribution(int n, int t, const std::function<void(const Distribution&)>& visit) {
  for (const auto& d : enumerate_level(n, t)) visit(d);
}

}  // namespace

void SweepReport::record(bool pass, const std::string& detail) {
  ++checked;
  if (pass) {
    ++passed;
  } else if (counterexamples.size() < kMaxCounterexamples) {
    counterexamples.push_back(detail);
  }
}

std::string SweepReport::summary(const std::string& unit) const {
  return std::to_string(passed) + "/" + std::to_string(checked) + " " + unit + " pass";
}

LevelFamily family_from_mask(int n, int t, const std::vector<Multiset>& level, std::uint64_t mask) {
  std::vector<Multiset> members;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (mask >> i & 1U) members.push_back(level[i]);
  }
  return LevelFamily(n, t, std::move(members));
}

LevelFamily random_family(int n, int t, RngStream& rng) {
  const auto level = enumerate_level(n, t);
  // keep probability in {1/16, ..., 16/16}
  const std::uint64_t keep = rng.below(16) + 1;
  std::vector<Multiset> members;
  for (const auto& m : level) {
    if (rng.below(16) < keep) members.push_back(m);
  }
  return LevelFamily(n, t, std::move(members));
}

SweepReport verify_cl_exhaustive(int n, int t, const std::vector<int>& ks) {
  const auto level = checked_level(n, t);
  SweepReport report{"clements-lindstrom exhaustive"};
  ClTable table;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
    const LevelFamily f = family_from_mask(n, t, level, mask);
    std::string why;
    report.record(cl_holds(f, ks, table, why), why);
  }
  return report;
}

SweepReport verify_cl_random(int max_n, int max_t, std::uint64_t trials,
                             const std::vector<int>& ks, std::uint64_t seed) {
  SweepReport report{"clements-lindstrom random"};
  ClTable table;
  RngStream rng(seed, 0x434c);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_t)));
    const LevelFamily f = random_family(n, t, rng);
    std::string why;
    report.record(cl_holds(f, ks, table, why), why);
  }
  return report;
}

SweepReport verify_lovasz_exhaustive(int n, int t) {
  const auto level = checked_level(n, t);
  SweepReport report{"lovasz exhaustive"};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
    const LevelFamily f = family_from_mask(n, t, level, mask);
    const auto c = lovasz_check(f);
    report.record(c.holds, c.holds ? "" : lovasz_detail(f, c));
  }
  return report;
}

SweepReport verify_lovasz_random(int max_n, int max_t, std::uint64_t trials, std::uint64_t seed) {
  SweepReport report{"lovasz random"};
  RngStream rng(seed, 0x4c4f56);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_t)));
    const LevelFamily f = random_family(n, t, rng);
    const auto c = lovasz_check(f);
    report.record(c.holds, c.holds ? "" : lovasz_detail(f, c));
  }
  return report;
}

SweepReport verify_lovasz_tight(int max_m, int max_t) {
  SweepReport report{"lovasz tight at full levels"};
  for (int m = 1; m <= max_m; ++m) {
    for (int t = 1; t <= max_t; ++t) {
      // The t-multisets of [m] are the first <m over t> members of M_{max_m}(t).
      const LevelFamily f = initial_segment(max_m, t, multichoose(m, t));
      const auto c = lovasz_check(f);
      const bool tight = c.holds && std::abs(static_cast<double>(c.actual) - c.bound) <= kLovaszSlack;
      report.record(tight, "m=" + std::to_string(m) + " " + lovasz_detail(f, c));
    }
  }
  return report;
}

bool compressed_containments_hold(const LevelFamily& compressed) {
  const LevelFamily sh = shadow(compressed);
  std::vector<Multiset> reduced;
  for (const auto& a : first_column(compressed)) reduced.push_back(a.with_removed(1));
  const LevelFamily column(compressed.ground_size(), compressed.level() - 1, std::move(reduced));
  for (const auto& c : sh) {
    if (!column.contains(c)) return false;
  }
  for (const auto& c : column) {
    if (!sh.contains(c)) return false;
  }
  return true;
}

CompressionSweep verify_compression_random(int max_n, int max_t, std::uint64_t trials,
                                           std::uint64_t seed) {
  CompressionSweep sweep;
  if (max_n < 2) return sweep;
  RngStream rng(seed, 0x434f4d50);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_t)));
    const int j = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(j - 1)));
    const LevelFamily f = random_family(n, t, rng);
    const auto [q, step] = compress_pair(f, i, j);
    const std::size_t before = shadow(f).size();
    const std::size_t after = shadow(q).size();
    std::ostringstream why;
    why << describe(f) << " (i,j)=(" << i << "," << j << ") |shadow| " << before << " -> " << after
        << ", size " << f.size() << " -> " << q.size();
    sweep.shadow_monotone.record(q.size() == f.size() && after <= before, why.str());
    for (const LevelFamily* g : {&f, &q}) {
      if (is_compressed(*g)) sweep.compressed_lemma.record(compressed_lemma_holds(*g), describe(*g));
    }
  }
  return sweep;
}

SweepReport verify_compressed_lemma_exhaustive(int n, int t, std::size_t max_size) {
  const auto level = checked_level(n, t);
  SweepReport report{"compressed family lemma exhaustive"};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    const LevelFamily f = family_from_mask(n, t, level, mask);
    if (!is_compressed(f)) continue;
    report.record(compressed_lemma_holds(f), describe(f));
  }
  return report;
}

SweepReport verify_greedy_vs_bruteforce(int max_n, int max_t) {
  SweepReport report{"path greedy equals brute force"};
  for (int n = 1; n <= max_n; ++n) {
    const Graph g = Graph::path(n);
    for (int t = 0; t <= max_t; ++t) {
      for_each_distribution(n, t, [&](const Distribution& d) {
        for (int z = 1; z <= n; ++z) {
          const bool greedy = path_z_solvable_greedy(n, d, z);
          const bool brute = is_z_solvable_bruteforce(g, d, z).solvable;
          report.record(greedy == brute, "P_" + std::to_string(n) + " D=" + describe(d) +
                                             " z=" + std::to_string(z));
        }
      });
    }
  }
  return report;
}

SweepReport verify_weight_certificate(int max_n, int max_t) {
  SweepReport report{"weight certificate sound"};
  for (int n = 1; n <= max_n; ++n) {
    const Graph g = Graph::path(n);
    for (int t = 0; t <= max_t; ++t) {
      for_each_distribution(n, t, [&](const Distribution& d) {
        for (int z = 1; z <= n; ++z) {
          const bool pass = !weight_certificate_unsolvable(d, z) ||
                            !is_z_solvable_bruteforce(g, d, z).solvable;
          report.record(pass, "P_" + std::to_string(n) + " D=" + describe(d) + " z=" + std::to_string(z));
        }
      });
    }
  }
  return report;
}

SweepReport verify_empty_block_witness(int max_n, int max_t) {
  SweepReport report{"empty-block witness sound"};
  for (int n = 1; n <= max_n; ++n) {
    const Graph g = Graph::path(n);
    for (int t = 0; t <= max_t; ++t) {
      for_each_distribution(n, t, [&](const Distribution& d) {
        for (int m = 1; m <= n; ++m) {
          const auto witness = unsolvability_witness_path(d, m);
          const bool pass = !witness || (!is_z_solvable_bruteforce(g, d, witness->center).solvable &&
                                         !is_solvable_bruteforce(g, d));
          report.record(pass, "P_" + std::to_string(n) + " D=" + describe(d) + " m=" + std::to_string(m));
        }
      });
    }
  }
  return report;
}

SweepReport verify_block_sufficiency(int max_n, int max_m, int max_t) {
  SweepReport report{"block sufficiency sound"};
  for (int n = 1; n <= max_n; ++n) {
    const Graph g = Graph::path(n);
    for (int t = 0; t <= max_t; ++t) {
      for_each_distribution(n, t, [&](const Distribution& d) {
        for (int m = 1; m <= std::min(max_m, n); ++m) {
          const bool pass = !block_sufficiency_solvable(d, m) || is_solvable_bruteforce(g, d);
          report.record(pass, "P_" + std::to_string(n) + " D=" + describe(d) + " m=" + std::to_string(m));
        }
      });
    }
  }
  return report;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> all;
  for (int v = 1; v <= n; ++v) {
    for (int w = v + 1; w <= n; ++w) all.emplace_back(v, w);
  }
  if (all.size() > 20) throw SizeError("connected_graphs: too many vertices to enumerate");
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < all.size(); ++e) {
      if (mask >> e & 1U) edges.push_back(all[e]);
    }
    try {
      out.emplace_back(n, edges);
    } catch (const DomainError&) {
      // disconnected
    }
  }
  return out;
}

SweepReport verify_monotonicity(int max_n, int max_t) {
  SweepReport report{"solvability monotone under adding pebbles"};
  for (int n = 1; n <= max_n; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      for (int t = 0; t <= max_t; ++t) {
        for_each_distribution(n, t, [&](const Distribution& d) {
          for (int z = 1; z <= n; ++z) {
            if (!is_z_solvable_bruteforce(g, d, z).solvable) continue;
            for (int v = 1; v <= n; ++v) {
              const Distribution more = d.with_added(v);
              report.record(is_z_solvable_bruteforce(g, more, z).solvable,
                            "n=" + std::to_string(n) + " D=" + describe(d) + " +" +
                                std::to_string(v) + " z=" + std::to_string(z));
            }
          }
        });
      }
    }
  }
  return report;
}

}  // namespace pebthresh
