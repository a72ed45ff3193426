#include "pebthresh/shadow_compression.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pebthresh/errors.hpp"

namespace pebthresh {

namespace {

void check_pair(const LevelFamily& family, int i, int j) {
  if (!(1 <= i && i < j && j <= family.ground_size())) {
    throw DomainError("compression indices must satisfy 1 <= i < j <= n, got (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

BigCount rank_sum(const LevelFamily& family) {
  BigCount total = 0;
  for (const auto& m : family) total += colex_rank(m);
  return total;
}

}  // namespace

LevelFamily shadow(const LevelFamily& family) {
  if (family.level() < 1) throw DomainError("shadow of a level-0 family");
  std::vector<Multiset> out;
  out.reserve(family.size() * static_cast<std::size_t>(family.ground_size()));
  for (const auto& a : family) {
    for (int i = 1; i <= family.ground_size(); ++i) {
      if (a.count(i) >= 1) out.push_back(a.with_removed(i));
    }
  }
  return LevelFamily(family.ground_size(), family.level() - 1, std::move(out));
}

LevelFamily iterated_shadow(const LevelFamily& family, int k) {
  if (k < 0 || k > family.level()) {
    throw DomainError("iterated_shadow: k must lie in [0, level]");
  }
  LevelFamily current = family;
  for (int step = 0; step < k; ++step) current = shadow(current);
  return current;
}

std::pair<LevelFamily, CompressionStep> compress_pair(const LevelFamily& family, int i, int j) {
  check_pair(family, i, j);
  std::vector<Multiset> out;
  out.reserve(family.size());
  std::size_t moved = 0;
  for (const auto& a : family) {
    if (a.count(j) >= 1) {
      Multiset image = a.with_moved(j, i);
      if (!family.contains(image)) {
        out.push_back(std::move(image));
        ++moved;
        continue;
      }
    }
    out.push_back(a);
  }
  return {LevelFamily(family.ground_size(), family.level(), std::move(out)),
          CompressionStep{i, j, moved}};
}

LevelFamily fully_compress(const LevelFamily& family) {
  LevelFamily current = family;
  BigCount potential = rank_sum(current);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 2; j <= current.ground_size(); ++j) {
      for (int i = 1; i < j; ++i) {
        auto [next, step] = compress_pair(current, i, j);
        if (step.moved == 0) continue;
        // Each effective compression moves members strictly down in colex order.
        BigCount next_potential = rank_sum(next);
        if (next_potential >= potential) {
          throw std::logic_error("fully_compress: rank potential did not decrease");
        }
        potential = std::move(next_potential);
        current = std::move(next);
        changed = true;
      }
    }
  }
  return current;
}

bool is_compressed(const LevelFamily& family) {
  const int n = family.ground_size();
  for (const auto& a : family) {
    for (int j = 2; j <= n; ++j) {
      if (a.count(j) == 0) continue;
      for (int i = 1; i < j; ++i) {
        if (!family.contains(a.with_moved(j, i))) return false;
      }
    }
  }
  return true;
}

std::vector<LevelFamily> layer_partition(const LevelFamily& family) {
  std::vector<std::vector<Multiset>> buckets(static_cast<std::size_t>(family.level()) + 1);
  if (family.ground_size() >= 1) {
    for (const auto& a : family) buckets[static_cast<std::size_t>(a.count(1))].push_back(a);
  } else {
    for (const auto& a : family) buckets[0].push_back(a);
  }
  std::vector<LevelFamily> parts;
  parts.reserve(buckets.size());
  for (auto& bucket : buckets) {
    parts.emplace_back(family.ground_size(), family.level(), std::move(bucket));
  }
  return parts;
}

LevelFamily first_column(const LevelFamily& family) {
  std::vector<Multiset> out;
  if (family.ground_size() >= 1) {
    for (const auto& a : family) {
      if (a.count(1) > 0) out.push_back(a);
    }
  }
  return LevelFamily(family.ground_size(), family.level(), std::move(out));
}

BigCount cl_min_shadow(int n, int t, const BigCount& s, int k, std::uint64_t cap) {
  if (k < 0 || k > t) throw DomainError("cl_min_shadow: k must lie in [0, t]");
  const LevelFamily segment = initial_segment(n, t, s, cap);
  return BigCount(iterated_shadow(segment, k).size());
}

double lovasz_x(const BigCount& s, int t) {
  if (t < 1) throw DomainError("lovasz_x: t must be at least 1");
  if (s < 0) throw DomainError("lovasz_x: negative family size");
  if (s == 0) return 0.0;
  const double target = s.convert_to<double>();
  // <x over t> >= x^t / t!, so x <= (s t!)^(1/t).
  const double log_factorial = std::lgamma(static_cast<double>(t) + 1.0);
  double hi = std::exp((std::log(target) + log_factorial) / t) + t;
  double lo = 0.0;
  while (multichoose_real(hi, t) < target) hi *= 2.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (multichoose_real(mid, t) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Prefer the endpoint whose value is closer to the target.
  const double err_lo = std::abs(multichoose_real(lo, t) - target);
  const double err_hi = std::abs(multichoose_real(hi, t) - target);
  return err_lo < err_hi ? lo : hi;
}

LovaszCheck lovasz_check(const LevelFamily& family) {
  if (family.level() < 1) throw DomainError("lovasz_check: level must be at least 1");
  const std::size_t actual = shadow(family).size();
  if (family.empty()) return {true, 0.0, 0.0, actual};
  const int t = family.level();
  const double x = lovasz_x(BigCount(family.size()), t);
  const double bound = multichoose_real(x, t - 1);
  return {static_cast<double>(actual) >= bound - kLovaszSlack, x, bound, actual};
}

}  // namespace pebthresh
