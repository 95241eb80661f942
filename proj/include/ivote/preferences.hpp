#pragma once

#include <string>
#include <vector>

#include "ivote/profile.hpp"

namespace ivote::prefs {

/// Complete, transitive preference over {1..m} as an ordered partition, best class first.
class WeakOrder {
 public:
  WeakOrder(int m, std::vector<std::vector<int>> levels);

  int m() const noexcept { return m_; }
  const std::vector<std::vector<int>>& levels() const noexcept { return levels_; }

  /// Index of the indifference class holding x_k; 0 is the best class.
  int rank(int k) const { return rank_[static_cast<std::size_t>(k)]; }
  /// x_a ≿ x_b.
  bool weakly_prefers(int a, int b) const { return rank(a) <= rank(b); }
  /// x_a ≻ x_b.
  bool strictly_prefers(int a, int b) const { return rank(a) < rank(b); }

  /// "[[2],[1,3]]".
  std::string str() const;

  friend bool operator==(const WeakOrder& lhs, const WeakOrder& rhs) { return lhs.levels_ == rhs.levels_; }

 private:
  int m_;
  std::vector<std::vector<int>> levels_;
  std::vector<int> rank_;
};

/// Some x satisfies x ≿ y ≿ z whenever x ⊵ y ▷ z or z ▷ y ⊵ x.
bool is_weakly_single_peaked(const WeakOrder& w);

/// The best indifference class as an interval. Throws not-weakly-single-peaked otherwise.
Interval top_set(const WeakOrder& w);

/// Every weak order on {1..m} (ordered set partitions), in a fixed deterministic order.
std::vector<WeakOrder> enumerate_weak_orders(int m, int guard = 5);

/// Weakly single-peaked orders whose top class is exactly `plateau`.
/// Throws too-large when m exceeds `guard`.
std::vector<WeakOrder> enumerate_wsp_with_plateau(int m, Interval plateau, int guard = 5);

}  // namespace ivote::prefs
