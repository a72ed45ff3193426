#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pebthresh {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Default cap on the number of multisets materialized by one call.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// A multiset over the ground set [n] = {1..n}, stored as its multiplicity
/// vector: count(i) is the multiplicity of element i (1-based).
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::size_t ground_size) : counts_(ground_size, 0) {}
  explicit Multiset(std::vector<int> counts);
  Multiset(std::initializer_list<int> counts) : Multiset(std::vector<int>(counts)) {}

  // Builds a multiset from its elements, e.g. from_elements(3, {1,1,3}).
  static Multiset from_elements(std::size_t ground_size, std::initializer_list<int> elements);

  std::size_t ground_size() const { return counts_.size(); }
  int size() const { return size_; }
  int count(int element) const { return counts_.at(static_cast<std::size_t>(element - 1)); }
  std::span<const int> counts() const { return counts_; }

  Multiset with_removed(int element) const;
  Multiset with_added(int element) const;
  // A - {from} + {to}; requires count(from) >= 1.
  Multiset with_moved(int from, int to) const;

  std::string to_string() const;  // "{1,1,3}"

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  std::vector<int> counts_;
  int size_ = 0;
};

enum class Ordering { Less, Equal, Greater };

/// Colexicographic comparison: at the highest element where multiplicities
/// differ, the multiset with the smaller multiplicity comes first.
/// Throws DomainError when ground sizes or sizes differ.
Ordering colex_compare(const Multiset& a, const Multiset& b);

// Strict weak order used for storage. Agrees with colex_compare on each level;
// across levels it still orders by the highest differing multiplicity.
struct ColexLess {
  bool operator()(const Multiset& a, const Multiset& b) const;
};

/// A set of t-multisets of [n], kept sorted in colex order without duplicates.
class LevelFamily {
 public:
  LevelFamily(int ground_size, int level) : ground_size_(ground_size), level_(level) {}
  LevelFamily(int ground_size, int level, std::vector<Multiset> members);

  int ground_size() const { return ground_size_; }
  int level() const { return level_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Multiset>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(const Multiset& m) const;

  friend bool operator==(const LevelFamily&, const LevelFamily&) = default;

 private:
  int ground_size_;
  int level_;
  std::vector<Multiset> members_;
};

/// Number of t-multisets of an n-set, C(n+t-1, t). Exact.
BigCount multichoose(int n, int t);

/// x(x+1)...(x+t-1)/t! for real x >= 0.
double multichoose_real(double x, int t);

std::vector<Multiset> enumerate_level(int n, int t, std::uint64_t cap = kDefaultEnumerationCap);

BigCount colex_rank(const Multiset& a);
Multiset colex_unrank(int n, int t, const BigCount& rank);

/// First s members of M_n(t) in colex order.
LevelFamily initial_segment(int n, int t, const BigCount& s,
                            std::uint64_t cap = kDefaultEnumerationCap);

// Reference families.
//   M_n(r;b) = {A : A(n) < b},               1 <= b <= r
//   N_n(r;b) = {A : A(n-b+1) = ... = A(n) = 0}, 1 <= b <= n-1
LevelFamily reference_M(int n, int r, int b, std::uint64_t cap = kDefaultEnumerationCap);
LevelFamily reference_N(int n, int r, int b, std::uint64_t cap = kDefaultEnumerationCap);

struct Bounds {
  double lower;
  double upper;
};

// Probability that a uniform r-multiset of [n] lies in M_n(r;b).
Rational prob_M(int n, int r, int b);
double prob_M_value(int n, int r, int b);  // same product in floating point
Bounds prob_M_bounds(int n, int r, int b);

// Probability that a uniform r-multiset of [n] lies in N_n(r;b).
Rational prob_N(int n, int r, int b);
double prob_N_value(int n, int r, int b);
Bounds prob_N_bounds(int n, int r, int b);

std::string format_rational(const Rational& q);  // "p/q", or "p" when q == 1

}  // namespace pebthresh
