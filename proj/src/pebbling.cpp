#include "pebthresh/pebbling.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <string>
#include <unordered_set>

#include "pebthresh/errors.hpp"

namespace pebthresh {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_vertex(int n, int v) {
  require(v >= 1 && v <= n, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

void check_distribution(int n, const Distribution& d) {
  require(d.ground_size() == static_cast<std::size_t>(n),
          "distribution has " + std::to_string(d.ground_size()) + " entries for " +
              std::to_string(n) + " vertices");
}

struct CountsHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int c : v) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges)
    : Graph(n, edges, GraphKind::General) {}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, GraphKind kind)
    : n_(n), kind_(kind), adjacency_(static_cast<std::size_t>(std::max(n, 0))) {
  require(n >= 1, "graph needs at least one vertex");
  for (auto [v, w] : edges) {
    check_vertex(n, v);
    check_vertex(n, w);
    require(v != w, "loop at vertex " + std::to_string(v));
    auto& nv = adjacency_[static_cast<std::size_t>(v - 1)];
    require(std::find(nv.begin(), nv.end(), w) == nv.end(),
            "repeated edge {" + std::to_string(v) + "," + std::to_string(w) + "}");
    nv.push_back(w);
    adjacency_[static_cast<std::size_t>(w - 1)].push_back(v);
  }
  for (auto& nv : adjacency_) std::sort(nv.begin(), nv.end());

  if (kind_ == GraphKind::Complete) return;
  distances_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 1; s <= n; ++s) {
    auto& dist = distances_[static_cast<std::size_t>(s - 1)];
    std::queue<int> frontier;
    dist[static_cast<std::size_t>(s - 1)] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : neighbors(v)) {
        if (dist[static_cast<std::size_t>(w - 1)] < 0) {
          dist[static_cast<std::size_t>(w - 1)] = dist[static_cast<std::size_t>(v - 1)] + 1;
          frontier.push(w);
        }
      }
    }
    require(std::none_of(dist.begin(), dist.end(), [](int x) { return x < 0; }),
            "graph is not connected");
  }
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges, GraphKind::Path);
}

Graph Graph::cycle(int n) {
  require(n >= 3, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(1, n);
  return Graph(n, edges, GraphKind::Cycle);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= n; ++v) {
    for (int w = v + 1; w <= n; ++w) edges.emplace_back(v, w);
  }
  return Graph(n, edges, GraphKind::Complete);
}

bool Graph::adjacent(int v, int w) const {
  if (v < 1 || v > n_ || w < 1 || w > n_) return false;
  const auto& nv = neighbors(v);
  return std::binary_search(nv.begin(), nv.end(), w);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 1; v <= n_; ++v) {
    for (int w : neighbors(v)) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

int Graph::distance(int v, int w) const {
  check_vertex(n_, v);
  check_vertex(n_, w);
  if (kind_ == GraphKind::Complete) return v == w ? 0 : 1;
  return distances_[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(w - 1)];
}

Distribution apply_move(const Graph& g, const Distribution& d, int v, int w) {
  check_distribution(g.order(), d);
  if (!g.adjacent(v, w)) {
    throw MoveError("(" + std::to_string(v) + "," + std::to_string(w) + ") is not an edge");
  }
  if (d.count(v) < 2) {
    throw MoveError("vertex " + std::to_string(v) + " holds fewer than two pebbles");
  }
  return d.with_removed(v).with_moved(v, w);
}

Distribution replay(const Graph& g, const Distribution& d, const MoveSequence& moves) {
  Distribution current = d;
  for (const auto& m : moves) current = apply_move(g, current, m.from, m.to);
  return current;
}

SolveResult is_z_solvable_bruteforce(const Graph& g, const Distribution& d, int root,
                                     std::uint64_t max_states) {
  const int n = g.order();
  check_distribution(n, d);
  check_vertex(n, root);
  if (d.count(root) >= 1) return {true, MoveSequence{}};

  struct Frame {
    std::vector<int> counts;
    int vertex = 1;      // next source vertex to try
    std::size_t edge = 0;  // next neighbour index of that vertex
  };

  std::unordered_set<std::vector<int>, CountsHash> visited;
  std::vector<Frame> stack;
  MoveSequence path;
  stack.push_back({std::vector<int>(d.counts().begin(), d.counts().end())});
  visited.insert(stack.back().counts);

  while (!stack.empty()) {
    Frame& top = stack.back();
    bool descended = false;
    while (top.vertex <= n && !descended) {
      const auto vi = static_cast<std::size_t>(top.vertex - 1);
      const auto& nbrs = g.neighbors(top.vertex);
      if (top.counts[vi] < 2 || top.edge >= nbrs.size()) {
        ++top.vertex;
        top.edge = 0;
        continue;
      }
      const int w = nbrs[top.edge++];
      std::vector<int> next = top.counts;
      next[vi] -= 2;
      next[static_cast<std::size_t>(w - 1)] += 1;
      if (w == root) {
        path.push_back({top.vertex, w});
        return {true, std::move(path)};
      }
      if (visited.contains(next)) continue;
      if (visited.size() >= max_states) {
        throw ResourceError("brute-force search exceeded " + std::to_string(max_states) +
                            " states");
      }
      visited.insert(next);
      path.push_back({top.vertex, w});
      stack.push_back({std::move(next)});
      descended = true;
    }
    if (!descended) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
  }
  return {false, std::nullopt};
}

bool is_solvable_bruteforce(const Graph& g, const Distribution& d, std::uint64_t max_states) {
  for (int z = 1; z <= g.order(); ++z) {
    if (!is_z_solvable_bruteforce(g, d, z, max_states).solvable) return false;
  }
  return true;
}

bool path_z_solvable_greedy(int n, const Distribution& d, int root) {
  check_distribution(n, d);
  check_vertex(n, root);
  long long left = 0;
  for (int i = 1; i < root; ++i) left = (d.count(i) + left) / 2;
  long long right = 0;
  for (int i = n; i > root; --i) right = (d.count(i) + right) / 2;
  return d.count(root) + left + right >= 1;
}

bool path_solvable_greedy(const Distribution& d) {
  const int n = static_cast<int>(d.ground_size());
  if (n == 0) return false;
  // left[z]: pebbles deliverable to z from vertices 1..z-1, right[z] likewise from above.
  std::vector<long long> left(static_cast<std::size_t>(n) + 2, 0);
  std::vector<long long> right(static_cast<std::size_t>(n) + 2, 0);
  for (int z = 2; z <= n; ++z) {
    left[static_cast<std::size_t>(z)] = (d.count(z - 1) + left[static_cast<std::size_t>(z - 1)]) / 2;
  }
  for (int z = n - 1; z >= 1; --z) {
    right[static_cast<std::size_t>(z)] = (d.count(z + 1) + right[static_cast<std::size_t>(z + 1)]) / 2;
  }
  for (int z = 1; z <= n; ++z) {
    if (d.count(z) + left[static_cast<std::size_t>(z)] + right[static_cast<std::size_t>(z)] < 1) {
      return false;
    }
  }
  return true;
}

bool complete_solvable(const Distribution& d) {
  const auto counts = d.counts();
  if (counts.empty()) return false;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return *hi >= 2 || *lo >= 1;
}

bool is_solvable(const Graph& g, const Distribution& d, std::uint64_t max_states) {
  check_distribution(g.order(), d);
  switch (g.kind()) {
    case GraphKind::Path:
      return path_solvable_greedy(d);
    case GraphKind::Complete:
      return complete_solvable(d);
    default:
      return is_solvable_bruteforce(g, d, max_states);
  }
}

Rational weight_plus(const Distribution& d, int i) {
  const int n = static_cast<int>(d.ground_size());
  check_vertex(n, i);
  Rational total = 0;
  for (int l = i; l <= n; ++l) {
    if (d.count(l) != 0) total += Rational(d.count(l), BigCount(1) << (l - i));
  }
  return total;
}

Rational weight_minus(const Distribution& d, int i) {
  const int n = static_cast<int>(d.ground_size());
  check_vertex(n, i);
  Rational total = 0;
  for (int l = 1; l <= i; ++l) {
    if (d.count(l) != 0) total += Rational(d.count(l), BigCount(1) << (i - l));
  }
  return total;
}

Rational root_weight(const Distribution& d, int root) {
  return weight_plus(d, root) + weight_minus(d, root) - d.count(root);
}

bool weight_certificate_unsolvable(const Distribution& d, int root) {
  return root_weight(d, root) < 1;
}

std::vector<Block> block_partition(int n, int m) {
  require(m >= 1 && m <= n, "block_partition: need 1 <= m <= n");
  const int k = n / m;
  // Sizes differ by at most one. When n mod m <= k these are exactly m and m+1.
  const int base = n / k;
  const int extra = n % k;
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(k));
  int first = 1;
  for (int b = 0; b < k; ++b) {
    const int len = base + (b >= k - extra ? 1 : 0);  // longer blocks last
    blocks.push_back({first, first + len - 1});
    first += len;
  }
  return blocks;
}

bool block_sufficiency_solvable(const Distribution& d, int m) {
  const int n = static_cast<int>(d.ground_size());
  require(m >= 1 && m < 62, "block_sufficiency_solvable: m out of range");
  for (const auto& block : block_partition(n, m)) {
    // 2^(L-1) pebbles solve a path of L vertices; blocks longer than m+1 only
    // occur when n mod m > n / m.
    const int exponent = std::max(m, block.length() - 1);
    if (exponent >= 62) return false;
    long long pebbles = 0;
    for (int v = block.first; v <= block.last; ++v) pebbles += d.count(v);
    if (pebbles < (1LL << exponent)) return false;
  }
  return true;
}

std::optional<EmptyBlockWitness> unsolvability_witness_path(const Distribution& d, int m) {
  const int n = static_cast<int>(d.ground_size());
  for (const auto& block : block_partition(n, m)) {
    bool empty = true;
    for (int v = block.first; v <= block.last && empty; ++v) empty = d.count(v) == 0;
    if (!empty) continue;
    const int c = block.center();
    if (weight_certificate_unsolvable(d, c)) return EmptyBlockWitness{block, c};
  }
  return std::nullopt;
}

}  // namespace pebthresh
