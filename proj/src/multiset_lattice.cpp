#include "pebthresh/multiset_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pebthresh/errors.hpp"

namespace pebthresh {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::uint64_t checked_level_size(int n, int t, std::uint64_t cap) {
  const BigCount size = multichoose(n, t);
  if (size > cap) {
    throw SizeError("level M_" + std::to_string(n) + "(" + std::to_string(t) + ") has " +
                    size.str() + " members, above the cap of " + std::to_string(cap));
  }
  return static_cast<std::uint64_t>(size);
}

// Visits M_n(t) in colex order: the highest element's multiplicity varies
// slowest, element 1 takes whatever is left. The visitor returns false to stop.
void for_each_in_level(int n, int t, const std::function<bool(const Multiset&)>& visit) {
  if (n == 0) {
    if (t == 0) visit(Multiset(std::size_t{0}));
    return;
  }
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  bool stop = false;
  std::function<void(int, int)> fill = [&](int element, int remaining) {
    if (stop) return;
    if (element == 1) {
      counts[0] = remaining;
      if (!visit(Multiset(counts))) stop = true;
      return;
    }
    for (int c = 0; c <= remaining && !stop; ++c) {
      counts[static_cast<std::size_t>(element - 1)] = c;
      fill(element - 1, remaining - c);
    }
    counts[static_cast<std::size_t>(element - 1)] = 0;
  };
  fill(n, t);
}

}  // namespace

Multiset::Multiset(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    require(c >= 0, "multiset multiplicities must be non-negative");
    size_ += c;
  }
}

Multiset Multiset::from_elements(std::size_t ground_size, std::initializer_list<int> elements) {
  std::vector<int> counts(ground_size, 0);
  for (int e : elements) {
    require(e >= 1 && static_cast<std::size_t>(e) <= ground_size, "element outside ground set");
    ++counts[static_cast<std::size_t>(e - 1)];
  }
  return Multiset(std::move(counts));
}

Multiset Multiset::with_removed(int element) const {
  require(count(element) >= 1, "cannot remove an absent element");
  Multiset out = *this;
  --out.counts_[static_cast<std::size_t>(element - 1)];
  --out.size_;
  return out;
}

Multiset Multiset::with_added(int element) const {
  Multiset out = *this;
  ++out.counts_.at(static_cast<std::size_t>(element - 1));
  ++out.size_;
  return out;
}

Multiset Multiset::with_moved(int from, int to) const {
  require(count(from) >= 1, "cannot move an absent element");
  Multiset out = *this;
  --out.counts_[static_cast<std::size_t>(from - 1)];
  ++out.counts_.at(static_cast<std::size_t>(to - 1));
  return out;
}

std::string Multiset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (int c = 0; c < counts_[i]; ++c) {
      if (!first) os << ',';
      os << i + 1;
      first = false;
    }
  }
  os << '}';
  return os.str();
}

Ordering colex_compare(const Multiset& a, const Multiset& b) {
  require(a.ground_size() == b.ground_size(), "colex_compare: ground sizes differ");
  require(a.size() == b.size(), "colex_compare: sizes differ");
  if (ColexLess{}(a, b)) return Ordering::Less;
  if (ColexLess{}(b, a)) return Ordering::Greater;
  return Ordering::Equal;
}

bool ColexLess::operator()(const Multiset& a, const Multiset& b) const {
  const auto ca = a.counts();
  const auto cb = b.counts();
  if (ca.size() != cb.size()) return ca.size() < cb.size();
  for (std::size_t i = ca.size(); i-- > 0;) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return false;
}

LevelFamily::LevelFamily(int ground_size, int level, std::vector<Multiset> members)
    : ground_size_(ground_size), level_(level), members_(std::move(members)) {
  require(ground_size >= 0 && level >= 0, "family parameters must be non-negative");
  for (const auto& m : members_) {
    require(m.ground_size() == static_cast<std::size_t>(ground_size),
            "family member " + m.to_string() + " has the wrong ground size");
    require(m.size() == level, "family member " + m.to_string() + " has the wrong size");
  }
  std::sort(members_.begin(), members_.end(), ColexLess{});
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool LevelFamily::contains(const Multiset& m) const {
  return std::binary_search(members_.begin(), members_.end(), m, ColexLess{});
}

BigCount multichoose(int n, int t) {
  require(t >= 0 && n >= 0, "multichoose: negative argument");
  if (t == 0) return 1;
  require(n >= 1, "multichoose: empty ground set with t > 0");
  BigCount result = 1;
  for (int i = 1; i <= t; ++i) {
    result *= n - 1 + i;
    result /= i;
  }
  return result;
}

double multichoose_real(double x, int t) {
  require(x >= 0.0, "multichoose_real: negative x");
  require(t >= 0, "multichoose_real: negative t");
  double value = 1.0;
  for (int j = 0; j < t; ++j) value *= (x + j) / (j + 1);
  return value;
}

std::vector<Multiset> enumerate_level(int n, int t, std::uint64_t cap) {
  const auto size = checked_level_size(n, t, cap);
  std::vector<Multiset> out;
  out.reserve(size);
  for_each_in_level(n, t, [&](const Multiset& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

// Multisets before A in colex order, grouped by the highest element where they
// differ from A: for element i with s elements still to place among [i],
// there are <i over s> - <i over s - A(i)> such multisets.
BigCount colex_rank(const Multiset& a) {
  const int n = static_cast<int>(a.ground_size());
  BigCount rank = 0;
  int remaining = a.size();
  for (int i = n; i >= 2; --i) {
    const int c = a.count(i);
    if (c > 0) rank += multichoose(i, remaining) - multichoose(i, remaining - c);
    remaining -= c;
  }
  return rank;
}

Multiset colex_unrank(int n, int t, const BigCount& rank) {
  require(rank >= 0 && rank < multichoose(n, t), "colex_unrank: rank out of range");
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  BigCount r = rank;
  int remaining = t;
  for (int i = n; i >= 2; --i) {
    const BigCount full = multichoose(i, remaining);
    int c = 0;
    while (c < remaining && full - multichoose(i, remaining - c - 1) <= r) ++c;
    if (c > 0) r -= full - multichoose(i, remaining - c);
    counts[static_cast<std::size_t>(i - 1)] = c;
    remaining -= c;
  }
  if (n >= 1) counts[0] = remaining;
  return Multiset(std::move(counts));
}

LevelFamily initial_segment(int n, int t, const BigCount& s, std::uint64_t cap) {
  require(s >= 0 && s <= multichoose(n, t), "initial_segment: size out of range");
  if (s > cap) throw SizeError("initial_segment: " + s.str() + " members above the cap");
  const auto want = static_cast<std::uint64_t>(s);
  std::vector<Multiset> members;
  members.reserve(want);
  if (want > 0) {
    for_each_in_level(n, t, [&](const Multiset& m) {
      members.push_back(m);
      return members.size() < want;
    });
  }
  return LevelFamily(n, t, std::move(members));
}

LevelFamily reference_M(int n, int r, int b, std::uint64_t cap) {
  require(n >= 1, "reference_M: n must be positive");
  require(b >= 1 && b <= r, "reference_M: need 1 <= b <= r");
  checked_level_size(n, r, cap);
  std::vector<Multiset> members;
  for_each_in_level(n, r, [&](const Multiset& m) {
    if (m.count(n) < b) members.push_back(m);
    return true;
  });
  return LevelFamily(n, r, std::move(members));
}

LevelFamily reference_N(int n, int r, int b, std::uint64_t cap) {
  require(b >= 1 && b <= n - 1, "reference_N: need 1 <= b <= n-1");
  require(r >= 0, "reference_N: negative level");
  checked_level_size(n, r, cap);
  std::vector<Multiset> members;
  for_each_in_level(n, r, [&](const Multiset& m) {
    for (int i = n - b + 1; i <= n; ++i) {
      if (m.count(i) != 0) return true;
    }
    members.push_back(m);
    return true;
  });
  return LevelFamily(n, r, std::move(members));
}

// 1 - prod_{j=0}^{b-1} (r-j)/(n+r-1-j)
Rational prob_M(int n, int r, int b) {
  require(n >= 1, "prob_M: n must be positive");
  require(b >= 1 && b <= r, "prob_M: need 1 <= b <= r");
  Rational product = 1;
  for (int j = 0; j < b; ++j) product *= Rational(r - j, n + r - 1 - j);
  return 1 - product;
}

double prob_M_value(int n, int r, int b) {
  require(n >= 1, "prob_M: n must be positive");
  require(b >= 1 && b <= r, "prob_M: need 1 <= b <= r");
  double log_product = 0.0;
  for (int j = 0; j < b; ++j) {
    log_product += std::log(static_cast<double>(r - j)) - std::log(static_cast<double>(n + r - 1 - j));
  }
  return -std::expm1(log_product);
}

Bounds prob_M_bounds(int n, int r, int b) {
  require(n >= 1, "prob_M: n must be positive");
  require(b >= 1 && b <= r, "prob_M: need 1 <= b <= r");
  const double lower = -std::expm1(-static_cast<double>(b) * (n - 1) / (n + r - 1));
  const double upper = -std::expm1(-static_cast<double>(b) * (n - 1) / (r - b + 1));
  return {lower, upper};
}

// prod_{j=1}^{b} (n-j)/(n+r-j)
Rational prob_N(int n, int r, int b) {
  require(b >= 1 && b <= n - 1, "prob_N: need 1 <= b <= n-1");
  require(r >= 0, "prob_N: negative level");
  Rational product = 1;
  for (int j = 1; j <= b; ++j) product *= Rational(n - j, n + r - j);
  return product;
}

double prob_N_value(int n, int r, int b) {
  require(b >= 1 && b <= n - 1, "prob_N: need 1 <= b <= n-1");
  require(r >= 0, "prob_N: negative level");
  double log_product = 0.0;
  for (int j = 1; j <= b; ++j) {
    log_product += std::log(static_cast<double>(n - j)) - std::log(static_cast<double>(n + r - j));
  }
  return std::exp(log_product);
}

Bounds prob_N_bounds(int n, int r, int b) {
  require(b >= 1 && b <= n - 1, "prob_N: need 1 <= b <= n-1");
  require(r >= 0, "prob_N: negative level");
  const double rb = static_cast<double>(r) * b;
  return {std::exp(-rb / (n - b)), std::exp(-rb / (n + r - 1))};
}

std::string format_rational(const Rational& q) {
  const BigCount num = boost::multiprecision::numerator(q);
  const BigCount den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace pebthresh
