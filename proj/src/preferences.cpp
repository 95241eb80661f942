#include "ivote/preferences.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "ivote/error.hpp"

namespace ivote::prefs {

WeakOrder::WeakOrder(int m, std::vector<std::vector<int>> levels)
    : m_(m), levels_(std::move(levels)), rank_(static_cast<std::size_t>(m + 1), -1) {
  validate_alternative_count(m_);
  int seen = 0;
  for (std::size_t r = 0; r < levels_.size(); ++r) {
    if (levels_[r].empty()) throw Error(ErrorKind::invalid_weak_order, "empty indifference class");
    std::sort(levels_[r].begin(), levels_[r].end());
    for (int k : levels_[r]) {
      validate_alternative(m_, k);
      if (rank_[static_cast<std::size_t>(k)] != -1) {
        throw Error(ErrorKind::invalid_weak_order, "alternative " + std::to_string(k) + " listed twice");
      }
      rank_[static_cast<std::size_t>(k)] = static_cast<int>(r);
      ++seen;
    }
  }
  if (seen != m_) throw Error(ErrorKind::invalid_weak_order, "classes do not cover all alternatives");
}

std::string WeakOrder::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < levels_.size(); ++r) {
    if (r > 0) os << ',';
    os << '[';
    for (std::size_t j = 0; j < levels_[r].size(); ++j) {
      if (j > 0) os << ',';
      os << levels_[r][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool is_weakly_single_peaked(const WeakOrder& w) {
  const int m = w.m();
  for (int x = 1; x <= m; ++x) {
    bool ok = true;
    for (int y = 1; y <= m && ok; ++y) {
      for (int z = 1; z <= m && ok; ++z) {
        // y may equal x; with strict betweenness the middle of three alternatives would pass vacuously.
        bool between = (x <= y && y < z) || (z < y && y <= x);
        if (between && !(w.weakly_prefers(x, y) && w.weakly_prefers(y, z))) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

Interval top_set(const WeakOrder& w) {
  const auto& best = w.levels().front();
  bool contiguous = best.back() - best.front() + 1 == static_cast<int>(best.size());
  if (!contiguous || !is_weakly_single_peaked(w)) {
    throw Error(ErrorKind::not_weakly_single_peaked, w.str());
  }
  return Interval{best.front(), best.back()};
}

namespace {

std::vector<WeakOrder> build_weak_orders(int m) {
  // Rank vectors (rank of x_1..x_m) whose used ranks form {0..k-1}, in lexicographic order.
  std::vector<WeakOrder> out;
  std::vector<int> ranks(static_cast<std::size_t>(m), 0);
  while (true) {
    int top = *std::max_element(ranks.begin(), ranks.end());
    std::vector<std::vector<int>> levels(static_cast<std::size_t>(top + 1));
    for (int k = 1; k <= m; ++k) levels[static_cast<std::size_t>(ranks[static_cast<std::size_t>(k - 1)])].push_back(k);
    bool surjective = std::none_of(levels.begin(), levels.end(), [](const auto& l) { return l.empty(); });
    if (surjective) out.emplace_back(m, std::move(levels));

    int pos = m - 1;
    while (pos >= 0 && ranks[static_cast<std::size_t>(pos)] == m - 1) {
      ranks[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++ranks[static_cast<std::size_t>(pos)];
  }
  return out;
}

constexpr int kCachedMax = 5;

const std::vector<WeakOrder>& cached_weak_orders(int m) {
  static const std::array<std::vector<WeakOrder>, kCachedMax + 1> table = [] {
    std::array<std::vector<WeakOrder>, kCachedMax + 1> t;
    for (int k = 2; k <= kCachedMax; ++k) t[static_cast<std::size_t>(k)] = build_weak_orders(k);
    return t;
  }();
  return table[static_cast<std::size_t>(m)];
}

}  // namespace

std::vector<WeakOrder> enumerate_weak_orders(int m, int guard) {
  validate_alternative_count(m);
  if (m > guard) {
    throw Error(ErrorKind::too_large, "weak-order enumeration limited to m <= " + std::to_string(guard));
  }
  if (m <= kCachedMax) return cached_weak_orders(m);
  return build_weak_orders(m);
}

std::vector<WeakOrder> enumerate_wsp_with_plateau(int m, Interval plateau, int guard) {
  Interval::make(m, plateau.left, plateau.right);
  std::vector<WeakOrder> out;
  for (const auto& w : enumerate_weak_orders(m, guard)) {
    const auto& best = w.levels().front();
    if (best.front() != plateau.left || best.back() != plateau.right ||
        static_cast<int>(best.size()) != plateau.size()) {
      continue;
    }
    if (is_weakly_single_peaked(w)) out.push_back(w);
  }
  return out;
}

}  // namespace ivote::prefs
