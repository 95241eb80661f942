#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ivote {

/// Alternative x_index under the fixed order x_1 ▷ x_2 ▷ ... ▷ x_m.
/// A smaller index is further left; the left-most alternative of a set is its minimum.
struct Alternative {
  int index = 1;

  friend auto operator<=>(const Alternative&, const Alternative&) = default;
};

/// x_a ▷ x_b: a is strictly left of b.
inline bool left_of(Alternative a, Alternative b) { return a.index < b.index; }
/// x_a ⊵ x_b.
inline bool weakly_left_of(Alternative a, Alternative b) { return a.index <= b.index; }

void validate_alternative_count(int m);
void validate_alternative(int m, int index);

/// The interval [x_left, x_right] = {x_left, ..., x_right}.
struct Interval {
  int left = 1;
  int right = 1;

  /// Validated constructor; throws invalid-interval / invalid-alternative.
  static Interval make(int m, int left, int right);
  static Interval singleton(int index) { return Interval{index, index}; }

  bool contains(int k) const { return left <= k && k <= right; }
  bool is_singleton() const { return left == right; }
  int size() const { return right - left + 1; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

enum class Side { left, right };

const char* to_string(Side side);

/// Number of intervals on m alternatives, m(m+1)/2.
std::size_t interval_count(int m);

/// All intervals sorted by (left, right) ascending. This order indexes AnonProfile::counts.
std::vector<Interval> canonical_intervals(int m);

/// Position of `iv` in canonical_intervals(m).
std::size_t canonical_index(int m, Interval iv);

using VoterId = std::string;

struct Ballot {
  VoterId voter;
  Interval interval;

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// Identified interval profile: a non-empty map from voter ids to intervals.
///
/// Ballots are kept in insertion order; equality is order-insensitive.
class Profile {
 public:
  Profile(int m, std::vector<Ballot> ballots);

  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return ballots_.size(); }
  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }

  bool has_voter(const VoterId& voter) const;
  const Interval& interval_of(const VoterId& voter) const;

  /// Profile from a list of intervals, voters named "1".."n" in list order.
  static Profile from_intervals(int m, const std::vector<Interval>& intervals, std::int64_t first_id = 1);

  friend bool operator==(const Profile& lhs, const Profile& rhs);

 private:
  int m_;
  std::vector<Ballot> ballots_;
};

/// Anonymized profile: counts[k] is how many voters report canonical interval k.
class AnonProfile {
 public:
  AnonProfile(int m, std::vector<std::int64_t> counts);

  int m() const noexcept { return m_; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  std::int64_t voters() const noexcept { return n_; }

  /// Identified profile with voters "first_id".. assigned in canonical interval order.
  Profile identify(std::int64_t first_id = 1) const;

  AnonProfile operator+(const AnonProfile& rhs) const;
  AnonProfile scaled(std::int64_t factor) const;

  friend bool operator==(const AnonProfile&, const AnonProfile&) = default;

 private:
  int m_;
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

AnonProfile anonymize(const Profile& p);

/// The profile with voter's left-most (side=left) or right-most alternative removed.
Profile delete_endpoint(const Profile& p, const VoterId& voter, Side side);

/// The i-variant where `voter` reports `iv` instead.
Profile with_interval(const Profile& p, const VoterId& voter, Interval iv);

/// Union of two voter-disjoint profiles over the same alternatives.
Profile combine(const Profile& p1, const Profile& p2);

/// True when no voter id occurs in both profiles.
bool disjoint(const Profile& p1, const Profile& p2);

/// Voter ids renamed through `renaming`, which must be a bijection defined on every voter.
Profile rename(const Profile& p, const std::map<VoterId, VoterId>& renaming);

/// λ copies of p, using ids that occur neither in p's copies nor in `avoid`.
///
/// The original ballots keep their ids. Numeric ids of copy c are shifted by c·stride with an
/// even stride, so every copy preserves the parity of each numeric id; other ids get a "#c" suffix.
Profile replicate(const Profile& p, std::int64_t lambda, const Profile* avoid = nullptr);

/// λ·p1 + p2 with fresh ids for the extra copies of p1.
Profile replicate_and_combine(const Profile& p1, std::int64_t lambda, const Profile& p2);

/// Largest numeric voter id in p, or 0 when none is numeric.
std::int64_t max_numeric_id(const Profile& p);

}  // namespace ivote
