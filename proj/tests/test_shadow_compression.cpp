#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "pebthresh/errors.hpp"
#include "pebthresh/random_experiments.hpp"
#include "pebthresh/shadow_compression.hpp"
#include "pebthresh/verification.hpp"

using namespace pebthresh;

namespace {

Multiset el(std::size_t n, std::initializer_list<int> elements) { return Multiset::from_elements(n, elements); }

LevelFamily fam(int n, int t, std::initializer_list<std::initializer_list<int>> members) {
  std::vector<Multiset> ms;
  for (auto m : members) ms.push_back(Multiset::from_elements(static_cast<std::size_t>(n), m));
  return LevelFamily(n, t, std::move(ms));
}

std::set<oracle::Counts> counts_set(const LevelFamily& f) {
  std::set<oracle::Counts> out;
  for (const auto& m : f) out.emplace(m.counts().begin(), m.counts().end());
  return out;
}

LevelFamily full_level(int n, int t) { return LevelFamily(n, t, enumerate_level(n, t)); }

}  // namespace

TEST_CASE("shadow") {
  CHECK(shadow(fam(3, 2, {{1, 1}})) == fam(3, 1, {{1}}));
  const auto s = shadow(fam(3, 2, {{1, 3}, {2, 2}}));
  CHECK(s == fam(3, 1, {{1}, {2}, {3}}));
  CHECK(shadow(full_level(2, 2)) == full_level(2, 1));
  CHECK(shadow(LevelFamily(3, 2)).empty());
  CHECK(shadow(fam(2, 1, {{2}})) == LevelFamily(2, 0, {Multiset({0, 0})}));
  CHECK_THROWS_AS(shadow(LevelFamily(3, 0)), DomainError);

  SUBCASE("matches the set-based oracle on random families") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(5));
      const int t = 1 + static_cast<int>(rng.below(5));
      const auto f = random_family(n, t, rng);
      CHECK(counts_set(shadow(f)) == oracle::shadow(counts_set(f)));
    }
  }
}

TEST_CASE("iterated_shadow") {
  const auto f = fam(3, 3, {{1, 1, 2}});
  CHECK(iterated_shadow(f, 0) == f);
  CHECK(iterated_shadow(f, 2) == fam(3, 1, {{1}, {2}}));
  CHECK_THROWS_AS(iterated_shadow(f, 4), DomainError);
  CHECK_THROWS_AS(iterated_shadow(f, -1), DomainError);

  // shadow^k M_n(r;b) = M_n(r-k;b), with M_n(s;b) = M_n(s) once s < b
  CHECK(iterated_shadow(reference_M(3, 3, 2), 1) == reference_M(3, 2, 2));
  for (int n = 1; n <= 5; ++n) {
    for (int r = 1; r <= 5; ++r) {
      for (int b = 1; b <= r; ++b) {
        for (int k = 1; k <= r; ++k) {
          const auto expected = r - k >= b ? reference_M(n, r - k, b) : full_level(n, r - k);
          if (n == 1) continue;  // M_1(r;b) is empty, so is its shadow
          CHECK(iterated_shadow(reference_M(n, r, b), k) == expected);
        }
      }
      for (int b = 1; b <= n - 1; ++b) {
        for (int k = 1; k <= r; ++k) {
          CHECK(iterated_shadow(reference_N(n, r, b), k) == reference_N(n, r - k, b));
        }
      }
    }
  }
}

TEST_CASE("compress_pair") {
  auto [a, step_a] = compress_pair(fam(2, 2, {{2, 2}}), 1, 2);
  CHECK(a == fam(2, 2, {{1, 2}}));
  CHECK(step_a.moved == 1);

  const auto blocked = fam(2, 2, {{1, 2}, {1, 1}});
  auto [b, step_b] = compress_pair(blocked, 1, 2);
  CHECK(b == blocked);
  CHECK(step_b.moved == 0);

  const auto seg = initial_segment(3, 2, 4);
  auto [c, step_c] = compress_pair(seg, 2, 3);
  CHECK(c == seg);
  CHECK(step_c.moved == 0);

  CHECK_THROWS_AS(compress_pair(seg, 2, 2), DomainError);
  CHECK_THROWS_AS(compress_pair(seg, 3, 2), DomainError);
  CHECK_THROWS_AS(compress_pair(seg, 0, 2), DomainError);
  CHECK_THROWS_AS(compress_pair(seg, 1, 4), DomainError);
}

TEST_CASE("fully_compress") {
  CHECK(fully_compress(fam(3, 2, {{3, 3}})) == fam(3, 2, {{1, 1}}));
  const auto seg = initial_segment(4, 3, 7);
  CHECK(fully_compress(seg) == seg);
  const auto f = fully_compress(fam(3, 2, {{1, 3}, {2, 2}}));
  CHECK(f == fam(3, 2, {{1, 1}, {1, 2}}));
  CHECK(is_compressed(f));
  CHECK(shadow(f).size() == 2);

  SUBCASE("single-element compressions can enlarge the shadow") {
    // shadow{{2,2}} = {{2}}, shadow{{1,2}} = {{1},{2}}
    const auto f1 = fam(2, 2, {{2, 2}});
    CHECK(shadow(compress_pair(f1, 1, 2).first).size() == 2);
    CHECK(shadow(f1).size() == 1);
    // the fixed point has shadow 3 while the colex minimum for 3 members is 2
    const auto f2 = fam(3, 2, {{1, 1}, {1, 3}, {3, 3}});
    const auto h2 = fully_compress(f2);
    CHECK(h2 == fam(3, 2, {{1, 1}, {1, 2}, {1, 3}}));
    CHECK(shadow(f2).size() == 2);
    CHECK(shadow(h2).size() == 3);
  }

  SUBCASE("compressed and same size") {
    RngStream rng(5, 1);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(5));
      const int t = 1 + static_cast<int>(rng.below(5));
      const auto g = random_family(n, t, rng);
      const auto h = fully_compress(g);
      CHECK(is_compressed(h));
      CHECK(h.size() == g.size());
    }
  }
}

TEST_CASE("is_compressed") {
  CHECK(is_compressed(LevelFamily(3, 2)));
  CHECK_FALSE(is_compressed(fam(2, 2, {{1, 2}})));
  CHECK(is_compressed(fam(2, 2, {{1, 2}, {1, 1}})));
  for (int n = 1; n <= 5; ++n) {
    for (int t = 1; t <= 5; ++t) {
      const auto size = static_cast<std::uint64_t>(multichoose(n, t));
      for (std::uint64_t s = 0; s <= size; ++s) CHECK(is_compressed(initial_segment(n, t, s)));
    }
  }
}

TEST_CASE("layer_partition and first_column") {
  const auto f = full_level(2, 2);
  const auto layers = layer_partition(f);
  REQUIRE(layers.size() == 3);
  CHECK(layers[0] == fam(2, 2, {{2, 2}}));
  CHECK(layers[1] == fam(2, 2, {{1, 2}}));
  CHECK(layers[2] == fam(2, 2, {{1, 1}}));
  CHECK(first_column(f).size() == 2);
  CHECK(first_column(fam(3, 2, {{2, 3}, {3, 3}})).empty());

  RngStream rng(3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_family(4, 3, rng);
    std::size_t total = 0;
    std::size_t positive = 0;
    const auto parts = layer_partition(g);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      total += parts[j].size();
      if (j > 0) positive += parts[j].size();
      for (const auto& m : parts[j]) CHECK(m.count(1) == static_cast<int>(j));
    }
    CHECK(total == g.size());
    CHECK(positive == first_column(g).size());
  }
}

TEST_CASE("cl_min_shadow") {
  CHECK(cl_min_shadow(2, 2, 3, 1) == 2);
  CHECK(cl_min_shadow(4, 3, 0, 2) == 0);
  CHECK(cl_min_shadow(3, 2, 3, 1) == 2);
  CHECK(cl_min_shadow(3, 2, 3, 0) == 3);
  CHECK_THROWS_AS(cl_min_shadow(3, 2, 7, 1), DomainError);
  CHECK_THROWS_AS(cl_min_shadow(3, 2, 3, 3), DomainError);

  SUBCASE("minimum over all families of M_3(2) by brute force") {
    const auto lv = oracle::level(3, 2);
    std::vector<std::size_t> best(lv.size() + 1, 99);
    for (std::uint32_t mask = 0; mask < (1U << lv.size()); ++mask) {
      std::set<oracle::Counts> f;
      for (std::size_t i = 0; i < lv.size(); ++i) {
        if (mask >> i & 1U) f.insert(lv[i]);
      }
      best[f.size()] = std::min(best[f.size()], oracle::shadow(f).size());
    }
    for (std::size_t s = 0; s <= lv.size(); ++s) CHECK(cl_min_shadow(3, 2, s, 1) == best[s]);
  }
}

TEST_CASE("lovasz_x") {
  CHECK(lovasz_x(3, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lovasz_x(0, 4) == 0.0);
  CHECK(lovasz_x(4, 2) == doctest::Approx((-1.0 + std::sqrt(33.0)) / 2.0).epsilon(1e-12));
  CHECK(lovasz_x(7, 1) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK_THROWS_AS(lovasz_x(3, 0), DomainError);

  for (int t = 1; t <= 8; ++t) {
    for (int s : {1, 2, 5, 17, 100, 12345}) {
      const double x = lovasz_x(s, t);
      CHECK(std::abs(multichoose_real(x, t) - s) <= 1e-10 * s);
    }
  }
  // large s stays finite and accurate
  const BigCount big = multichoose(40, 30);
  CHECK(lovasz_x(big, 30) == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("lovasz_check") {
  const auto full = full_level(2, 2);
  const auto c1 = lovasz_check(full);
  CHECK(c1.holds);
  CHECK(c1.x == doctest::Approx(2.0));
  CHECK(c1.bound == doctest::Approx(2.0));
  CHECK(c1.actual == 2);

  const auto c2 = lovasz_check(fam(3, 2, {{1, 3}, {2, 2}}));
  CHECK(c2.holds);
  CHECK(c2.x == doctest::Approx((-1.0 + std::sqrt(17.0)) / 2.0));
  CHECK(c2.bound == doctest::Approx(1.5616).epsilon(1e-4));
  CHECK(c2.actual == 3);

  const auto c3 = lovasz_check(LevelFamily(3, 2));
  CHECK(c3.holds);
  CHECK(c3.x == 0.0);
  CHECK(c3.bound == 0.0);
  CHECK(c3.actual == 0);

  CHECK(lovasz_check(LevelFamily(3, 1)).holds);
  CHECK_THROWS_AS(lovasz_check(LevelFamily(3, 0)), DomainError);
}

TEST_CASE("compressed family lemma and containments") {
  const auto report = verify_compressed_lemma_exhaustive(3, 3, 4);
  CHECK(report.ok());
  CHECK(report.checked > 0);

  RngStream rng(8, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const int t = 1 + static_cast<int>(rng.below(5));
    const auto f = fully_compress(random_family(n, t, rng));
    CHECK(shadow(f).size() == first_column(f).size());
    CHECK(compressed_containments_hold(f));
  }
}

TEST_CASE("small sweeps") {
  CHECK(verify_cl_exhaustive(2, 3, {1, 2, 3}).ok());
  CHECK(verify_cl_exhaustive(2, 3, {1}).checked == 16);
  CHECK(verify_lovasz_exhaustive(3, 2).ok());
  CHECK(verify_lovasz_tight(3, 3).ok());
  CHECK(verify_compression_random(4, 4, 0, 1).shadow_monotone.checked == 0);
  const auto comp = verify_compression_random(4, 4, 500, 1);
  CHECK(comp.shadow_monotone.checked == 500);
  CHECK_FALSE(comp.shadow_monotone.ok());  // see "single-element compressions can enlarge the shadow"
  CHECK_FALSE(comp.shadow_monotone.counterexamples.empty());
  CHECK(comp.compressed_lemma.checked > 0);
  CHECK(comp.compressed_lemma.ok());
  CHECK_THROWS_AS(verify_cl_exhaustive(4, 4, {1}), SizeError);
}
