#pragma once

#include <utility>
#include <vector>

#include "pebthresh/multiset_lattice.hpp"

namespace pebthresh {

struct CompressionStep {
  int i;
  int j;
  std::size_t moved;
};

/// All (t-1)-multisets obtained by deleting one element from a member.
/// The shadow of an empty family is empty.
LevelFamily shadow(const LevelFamily& family);

LevelFamily iterated_shadow(const LevelFamily& family, int k);

/// The (i,j)-compression: each member A with A(j) >= 1 whose image
/// A - {j} + {i} is not already in the family is replaced by that image.
std::pair<LevelFamily, CompressionStep> compress_pair(const LevelFamily& family, int i, int j);

/// Applies pair compressions until none changes the family. Pairs are swept in
/// order of increasing j, then increasing i. The result is compressed but is
/// not in general a colex initial segment.
LevelFamily fully_compress(const LevelFamily& family);

bool is_compressed(const LevelFamily& family);

/// A_j = {A : A(1) = j} for j = 0..t.
std::vector<LevelFamily> layer_partition(const LevelFamily& family);

/// A^1 = {A : A(1) > 0}.
LevelFamily first_column(const LevelFamily& family);

/// Size of the k-shadow of the first s multisets of M_n(t) in colex order,
/// which is the least k-shadow size of any s-member family.
BigCount cl_min_shadow(int n, int t, const BigCount& s, int k,
                       std::uint64_t cap = kDefaultEnumerationCap);

/// Unique x >= 0 with multichoose_real(x, t) == s.
double lovasz_x(const BigCount& s, int t);

struct LovaszCheck {
  bool holds;
  double x;
  double bound;
  std::size_t actual;
};

inline constexpr double kLovaszSlack = 1e-9;

/// Checks |shadow(F)| >= <x over t-1> - slack with x = lovasz_x(|F|, t).
LovaszCheck lovasz_check(const LevelFamily& family);

}  // namespace pebthresh
