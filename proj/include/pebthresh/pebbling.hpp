#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebthresh/multiset_lattice.hpp"

namespace pebthresh {

/// A pebbling distribution has the same data model as a multiset: D(i) is the
/// number of pebbles on vertex i and size() is the total pebble count.
using Distribution = Multiset;

enum class GraphKind { Path, Cycle, Complete, General };

/// Simple connected graph on vertices 1..n.
class Graph {
 public:
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  static Graph path(int n);
  static Graph cycle(int n);
  static Graph complete(int n);

  int order() const { return n_; }
  GraphKind kind() const { return kind_; }
  bool adjacent(int v, int w) const;
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v - 1)); }
  std::vector<std::pair<int, int>> edges() const;  // v < w, sorted
  int distance(int v, int w) const;

 private:
  Graph(int n, const std::vector<std::pair<int, int>>& edges, GraphKind kind);

  int n_;
  GraphKind kind_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> distances_;
};

struct Move {
  int from;
  int to;
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

inline constexpr std::uint64_t kDefaultMaxStates = 10'000'000;

/// One pebbling step: two pebbles leave v, one arrives at the neighbour w.
Distribution apply_move(const Graph& g, const Distribution& d, int v, int w);

Distribution replay(const Graph& g, const Distribution& d, const MoveSequence& moves);

struct SolveResult {
  bool solvable;
  std::optional<MoveSequence> witness;  // present iff solvable
};

/// Exhaustive depth-first search over reachable distributions.
/// Throws ResourceError once more than max_states distinct states are visited.
SolveResult is_z_solvable_bruteforce(const Graph& g, const Distribution& d, int root,
                                     std::uint64_t max_states = kDefaultMaxStates);

bool is_solvable_bruteforce(const Graph& g, const Distribution& d,
                            std::uint64_t max_states = kDefaultMaxStates);

/// Exact decision on the path P_n by folding carries toward the root from both ends.
bool path_z_solvable_greedy(int n, const Distribution& d, int root);
bool path_solvable_greedy(const Distribution& d);

/// Closed form for K_n: solvable iff some vertex has two pebbles or every vertex has one.
bool complete_solvable(const Distribution& d);

/// Dispatches on the graph kind: greedy for paths, closed form for complete
/// graphs, brute force otherwise.
bool is_solvable(const Graph& g, const Distribution& d,
                 std::uint64_t max_states = kDefaultMaxStates);

// Discounted pebble weights on the path, Y_i^+ = sum_{l>=i} D_l / 2^(l-i) and
// Y_i^- = sum_{l<=i} D_l / 2^(i-l). Exact dyadic rationals.
Rational weight_plus(const Distribution& d, int i);
Rational weight_minus(const Distribution& d, int i);

/// Y_z^+ + Y_z^- - D(z), the total discounted weight that can reach z.
Rational root_weight(const Distribution& d, int root);

/// True when root_weight < 1, which proves z is unreachable on the path.
bool weight_certificate_unsolvable(const Distribution& d, int root);

struct Block {
  int first;
  int last;
  int length() const { return last - first + 1; }
  int center() const { return first + (length() - 1) / 2; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// floor(n/m) consecutive blocks of m or m+1 vertices covering [n]; the first
/// n mod m blocks take the extra vertex.
std::vector<Block> block_partition(int n, int m);

/// Every block holds at least 2^m pebbles. Sufficient (not necessary) for
/// solvability on P_n.
bool block_sufficiency_solvable(const Distribution& d, int m);

struct EmptyBlockWitness {
  Block block;
  int center;
};

/// An empty block whose center carries a weight certificate; proves D unsolvable.
std::optional<EmptyBlockWitness> unsolvability_witness_path(const Distribution& d, int m);

}  // namespace pebthresh
