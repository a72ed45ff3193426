#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pebthresh/multiset_lattice.hpp"
#include "pebthresh/pebbling.hpp"
#include "pebthresh/random_experiments.hpp"

namespace pebthresh {

// Outcome of one property sweep. `checked` counts the instances examined
// (families, triples, distributions...), `passed` those satisfying the property.
struct SweepReport {
  explicit SweepReport(std::string name = {}) : property(std::move(name)) {}

  std::string property;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::vector<std::string> counterexamples;  // first few failures

  bool ok() const { return checked == passed; }
  void record(bool pass, const std::string& detail);
  std::string summary(const std::string& unit) const;  // "1024/1024 families pass"
};

// Family of the members of `level` selected by the bits of mask.
LevelFamily family_from_mask(int n, int t, const std::vector<Multiset>& level, std::uint64_t mask);

// Each member of M_n(t) kept independently with a probability drawn per family.
LevelFamily random_family(int n, int t, RngStream& rng);

// Largest level we allow to be swept exhaustively (2^20 families).
inline constexpr std::size_t kMaxExhaustiveLevel = 20;

SweepReport verify_cl_exhaustive(int n, int t, const std::vector<int>& ks);
SweepReport verify_cl_random(int max_n, int max_t, std::uint64_t trials,
                             const std::vector<int>& ks, std::uint64_t seed);

SweepReport verify_lovasz_exhaustive(int n, int t);
SweepReport verify_lovasz_random(int max_n, int max_t, std::uint64_t trials, std::uint64_t seed);
// F = all t-multisets of [m] must meet the bound with equality.
SweepReport verify_lovasz_tight(int max_m, int max_t);

struct CompressionSweep {
  // size preservation and |shadow(q(F))| <= |shadow(F)| per random (F, i, j)
  SweepReport shadow_monotone{"compression keeps size and does not enlarge the shadow"};
  // |shadow| = |A^1| and both containments, per compressed family met (F or q(F))
  SweepReport compressed_lemma{"compressed families have |shadow| = |A^1|"};
};

CompressionSweep verify_compression_random(int max_n, int max_t, std::uint64_t trials,
                                           std::uint64_t seed);
// |shadow(F)| = |A^1(F)| for every compressed F in M_n(t) with at most max_size members.
SweepReport verify_compressed_lemma_exhaustive(int n, int t, std::size_t max_size);
// The containments shadow(F) within A^1 - {1} and A^1 - {1} within shadow(F).
bool compressed_containments_hold(const LevelFamily& compressed);

SweepReport verify_greedy_vs_bruteforce(int max_n, int max_t);
SweepReport verify_weight_certificate(int max_n, int max_t);
SweepReport verify_empty_block_witness(int max_n, int max_t);
SweepReport verify_block_sufficiency(int max_n, int max_m, int max_t);
// Adding one pebble anywhere never destroys z-solvability; all connected
// graphs on up to max_n vertices, base distributions of up to max_t pebbles.
SweepReport verify_monotonicity(int max_n, int max_t);

// All connected simple graphs on [n], by edge subset.
std::vector<Graph> connected_graphs(int n);

}  // namespace pebthresh
