// Brute-force reference implementations and random generators used only by tests.
// Each oracle recomputes its answer from the raw definitions along a different route than the
// library, so agreement is evidence rather than tautology.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ivote/profile.hpp"
#include "ivote/rational.hpp"
#include "ivote/rules.hpp"

namespace oracle {

using ivote::Interval;
using ivote::Rational;

// Π_α(p, x_k) from the alternative sets themselves: a voter all of whose alternatives are
// weakly left of x_k counts 1; one that contains x_k and something right of it counts α_k.
inline Rational position(const std::vector<Rational>& alpha, const std::vector<Interval>& ivs, int k) {
  Rational sum;
  for (const auto& iv : ivs) {
    std::set<int> members;
    for (int x = iv.left; x <= iv.right; ++x) members.insert(x);
    const bool all_left = std::all_of(members.begin(), members.end(), [k](int x) { return x <= k; });
    const bool holds_k = members.count(k) == 1;
    if (all_left) {
      sum += Rational(1);
    } else if (holds_k) {
      sum += alpha[static_cast<std::size_t>(k - 1)];
    }
  }
  return sum;
}

// Winner by comparing 2·den·Π with 2·den·θ·n in integers, scanning from the left.
inline int threshold_winner(const std::vector<Rational>& theta, const std::vector<Rational>& alpha,
                            const std::vector<Interval>& ivs) {
  const int m = static_cast<int>(theta.size());
  const auto n = static_cast<std::int64_t>(ivs.size());
  for (int k = 1; k < m; ++k) {
    const Rational pi = position(alpha, ivs, k);
    const Rational& t = theta[static_cast<std::size_t>(k - 1)];
    // pi ≥ t·n  ⇔  pi.num·t.den ≥ t.num·n·pi.den
    if (static_cast<__int128>(pi.num()) * t.den() >= static_cast<__int128>(t.num()) * n * pi.den()) return k;
  }
  return m;
}

// Left-most x_i such that at least n of the 2n endpoints are ≤ i.
inline int endpoint_median(const std::vector<Interval>& ivs, int m) {
  const auto n = static_cast<std::int64_t>(ivs.size());
  for (int i = 1; i <= m; ++i) {
    std::int64_t at_most = 0;
    for (const auto& iv : ivs) at_most += (iv.left <= i) + (iv.right <= i);
    if (at_most >= n) return i;
  }
  return m;
}

// Phantom median on peaks: left-most x_i with #{peaks ≤ i} ≥ θ_i·n.
inline int phantom_median(const std::vector<Rational>& theta, const std::vector<int>& peaks) {
  const int m = static_cast<int>(theta.size());
  for (int i = 1; i < m; ++i) {
    const auto count = std::count_if(peaks.begin(), peaks.end(), [i](int p) { return p <= i; });
    if (Rational(count) >= theta[static_cast<std::size_t>(i - 1)] * Rational(static_cast<std::int64_t>(peaks.size()))) {
      return i;
    }
  }
  return m;
}

// Pascal's triangle.
inline std::uint64_t binomial(int n, int k) {
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  }
  return c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// All count vectors of n voters over q intervals, by sorting every one of the q^n tuples.
inline std::set<std::vector<std::int64_t>> all_count_vectors(int q, int n) {
  std::set<std::vector<std::int64_t>> out;
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    for (int t : tuple) ++counts[static_cast<std::size_t>(t)];
    out.insert(counts);
    int pos = 0;
    while (pos < n && tuple[static_cast<std::size_t>(pos)] == q - 1) tuple[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
    ++tuple[static_cast<std::size_t>(pos)];
  }
  return out;
}

// Ordered Bell (Fubini) numbers: weak orders on m labelled alternatives.
inline std::uint64_t fubini(int m) {
  std::vector<std::uint64_t> a(static_cast<std::size_t>(m + 1), 0);
  a[0] = 1;
  for (int k = 1; k <= m; ++k) {
    for (int j = 1; j <= k; ++j) a[static_cast<std::size_t>(k)] += binomial(k, j) * a[static_cast<std::size_t>(k - j)];
  }
  return a[static_cast<std::size_t>(m)];
}

// Weak single-peakedness by utility shape: ranks (0 = best) weakly increase moving away from
// some best alternative in both directions.
inline bool wsp_by_shape(const std::vector<int>& rank) {
  const int m = static_cast<int>(rank.size());
  for (int peak = 0; peak < m; ++peak) {
    bool ok = true;
    for (int x = peak; x + 1 < m && ok; ++x) ok = rank[static_cast<std::size_t>(x + 1)] >= rank[static_cast<std::size_t>(x)];
    for (int x = peak; x - 1 >= 0 && ok; --x) ok = rank[static_cast<std::size_t>(x - 1)] >= rank[static_cast<std::size_t>(x)];
    if (ok && rank[static_cast<std::size_t>(peak)] == *std::min_element(rank.begin(), rank.end())) return true;
  }
  return false;
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // p/q with 1 ≤ q ≤ max_den, inside [lo, hi].
  Rational rational(const Rational& lo, const Rational& hi, int max_den = 12) {
    while (true) {
      const int q = uniform(1, max_den);
      const int p = uniform(0, q);
      Rational r(p, q);
      if (r >= lo && r <= hi) return r;
    }
  }

  std::vector<Rational> weights(int m, int max_den = 12) {
    std::vector<Rational> a;
    for (int k = 0; k < m; ++k) a.push_back(rational(Rational(0), Rational(1), max_den));
    return a;
  }

  // Strictly inside (0,1) and non-increasing.
  std::vector<Rational> thresholds(int m, int max_den = 12) {
    std::vector<Rational> t;
    for (int k = 0; k < m; ++k) {
      Rational v;
      do {
        v = rational(Rational(1, max_den), Rational(max_den - 1, max_den), max_den);
      } while (v <= Rational(0) || v >= Rational(1));
      t.push_back(v);
    }
    std::sort(t.begin(), t.end(), [](const Rational& a, const Rational& b) { return a > b; });
    return t;
  }

  Interval interval(int m) {
    const int l = uniform(1, m);
    return Interval{l, uniform(l, m)};
  }

  std::vector<Interval> intervals(int m, int n) {
    std::vector<Interval> out;
    for (int k = 0; k < n; ++k) out.push_back(interval(m));
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
