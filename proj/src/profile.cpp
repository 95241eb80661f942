#include "ivote/profile.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

#include "ivote/error.hpp"

namespace ivote {

void validate_alternative_count(int m) {
  if (m < 2) throw Error(ErrorKind::invalid_alternative_count, "need m >= 2, got " + std::to_string(m));
}

void validate_alternative(int m, int index) {
  if (index < 1 || index > m) {
    throw Error(ErrorKind::invalid_alternative,
                "index " + std::to_string(index) + " outside 1.." + std::to_string(m));
  }
}

Interval Interval::make(int m, int left, int right) {
  validate_alternative_count(m);
  validate_alternative(m, left);
  validate_alternative(m, right);
  if (left > right) {
    throw Error(ErrorKind::invalid_interval,
                "[" + std::to_string(left) + "," + std::to_string(right) + "] has left > right");
  }
  return Interval{left, right};
}

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

std::size_t interval_count(int m) {
  validate_alternative_count(m);
  return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
}

std::vector<Interval> canonical_intervals(int m) {
  std::vector<Interval> out;
  out.reserve(interval_count(m));
  for (int l = 1; l <= m; ++l) {
    for (int r = l; r <= m; ++r) out.push_back(Interval{l, r});
  }
  return out;
}

std::size_t canonical_index(int m, Interval iv) {
  // Rows before `left` hold m, m-1, ..., m-left+2 intervals.
  auto l = static_cast<std::size_t>(iv.left);
  auto mm = static_cast<std::size_t>(m);
  return (l - 1) * mm - (l - 1) * (l - 2) / 2 + static_cast<std::size_t>(iv.right - iv.left);
}

namespace {

std::optional<std::int64_t> numeric_id(const VoterId& id) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (ec != std::errc() || ptr != id.data() + id.size() || id.empty()) return std::nullopt;
  return value;
}

}  // namespace

Profile::Profile(int m, std::vector<Ballot> ballots) : m_(m), ballots_(std::move(ballots)) {
  validate_alternative_count(m_);
  if (ballots_.empty()) throw Error(ErrorKind::invalid_profile, "profile needs at least one voter");
  std::set<std::string_view> seen;
  for (const auto& b : ballots_) {
    Interval::make(m_, b.interval.left, b.interval.right);
    if (!seen.insert(b.voter).second) {
      throw Error(ErrorKind::invalid_profile, "duplicate voter id \"" + b.voter + "\"");
    }
  }
}

bool Profile::has_voter(const VoterId& voter) const {
  return std::any_of(ballots_.begin(), ballots_.end(), [&](const Ballot& b) { return b.voter == voter; });
}

const Interval& Profile::interval_of(const VoterId& voter) const {
  for (const auto& b : ballots_) {
    if (b.voter == voter) return b.interval;
  }
  throw Error(ErrorKind::no_such_voter, "\"" + voter + "\"");
}

Profile Profile::from_intervals(int m, const std::vector<Interval>& intervals, std::int64_t first_id) {
  std::vector<Ballot> ballots;
  ballots.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    ballots.push_back({std::to_string(first_id + static_cast<std::int64_t>(i)), intervals[i]});
  }
  return Profile(m, std::move(ballots));
}

bool operator==(const Profile& lhs, const Profile& rhs) {
  if (lhs.m_ != rhs.m_ || lhs.ballots_.size() != rhs.ballots_.size()) return false;
  auto by_id = [](const Ballot& a, const Ballot& b) { return a.voter < b.voter; };
  auto a = lhs.ballots_;
  auto b = rhs.ballots_;
  std::sort(a.begin(), a.end(), by_id);
  std::sort(b.begin(), b.end(), by_id);
  return a == b;
}

AnonProfile::AnonProfile(int m, std::vector<std::int64_t> counts) : m_(m), counts_(std::move(counts)) {
  if (counts_.size() != interval_count(m_)) {
    throw Error(ErrorKind::invalid_profile, "expected " + std::to_string(interval_count(m_)) + " counts, got " +
                                                std::to_string(counts_.size()));
  }
  for (auto c : counts_) {
    if (c < 0) throw Error(ErrorKind::invalid_profile, "negative count");
    n_ += c;
  }
  if (n_ == 0) throw Error(ErrorKind::invalid_profile, "profile needs at least one voter");
}

Profile AnonProfile::identify(std::int64_t first_id) const {
  std::vector<Interval> intervals;
  intervals.reserve(static_cast<std::size_t>(n_));
  auto all = canonical_intervals(m_);
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (std::int64_t c = 0; c < counts_[k]; ++c) intervals.push_back(all[k]);
  }
  return Profile::from_intervals(m_, intervals, first_id);
}

AnonProfile AnonProfile::operator+(const AnonProfile& rhs) const {
  if (m_ != rhs.m_) throw Error(ErrorKind::incompatible_profiles, "different m");
  auto out = counts_;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += rhs.counts_[k];
  return AnonProfile(m_, std::move(out));
}

AnonProfile AnonProfile::scaled(std::int64_t factor) const {
  if (factor < 1) throw Error(ErrorKind::invalid_instance, "scale factor must be positive");
  auto out = counts_;
  for (auto& c : out) c *= factor;
  return AnonProfile(m_, std::move(out));
}

AnonProfile anonymize(const Profile& p) {
  std::vector<std::int64_t> counts(interval_count(p.m()), 0);
  for (const auto& b : p.ballots()) ++counts[canonical_index(p.m(), b.interval)];
  return AnonProfile(p.m(), std::move(counts));
}

Profile delete_endpoint(const Profile& p, const VoterId& voter, Side side) {
  Interval iv = p.interval_of(voter);
  if (iv.is_singleton()) {
    throw Error(ErrorKind::cannot_shrink, "voter \"" + voter + "\" reports a singleton");
  }
  if (side == Side::left) {
    ++iv.left;
  } else {
    --iv.right;
  }
  return with_interval(p, voter, iv);
}

Profile with_interval(const Profile& p, const VoterId& voter, Interval iv) {
  auto ballots = p.ballots();
  bool found = false;
  for (auto& b : ballots) {
    if (b.voter == voter) {
      b.interval = iv;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::no_such_voter, "\"" + voter + "\"");
  return Profile(p.m(), std::move(ballots));
}

bool disjoint(const Profile& p1, const Profile& p2) {
  std::set<std::string_view> ids;
  for (const auto& b : p1.ballots()) ids.insert(b.voter);
  return std::none_of(p2.ballots().begin(), p2.ballots().end(),
                      [&](const Ballot& b) { return ids.count(b.voter) > 0; });
}

Profile combine(const Profile& p1, const Profile& p2) {
  if (p1.m() != p2.m()) throw Error(ErrorKind::incompatible_profiles, "profiles over different m");
  if (!disjoint(p1, p2)) throw Error(ErrorKind::not_disjoint, "profiles share voter ids");
  auto ballots = p1.ballots();
  ballots.insert(ballots.end(), p2.ballots().begin(), p2.ballots().end());
  return Profile(p1.m(), std::move(ballots));
}

Profile rename(const Profile& p, const std::map<VoterId, VoterId>& renaming) {
  std::vector<Ballot> ballots;
  ballots.reserve(p.size());
  for (const auto& b : p.ballots()) {
    auto it = renaming.find(b.voter);
    if (it == renaming.end()) throw Error(ErrorKind::invalid_instance, "renaming misses voter \"" + b.voter + "\"");
    ballots.push_back({it->second, b.interval});
  }
  // Profile's constructor rejects a non-injective renaming as duplicate ids.
  return Profile(p.m(), std::move(ballots));
}

std::int64_t max_numeric_id(const Profile& p) {
  std::int64_t best = 0;
  for (const auto& b : p.ballots()) {
    if (auto v = numeric_id(b.voter)) best = std::max(best, *v);
  }
  return best;
}

Profile replicate(const Profile& p, std::int64_t lambda, const Profile* avoid) {
  if (lambda < 1) throw Error(ErrorKind::invalid_instance, "replication factor must be positive");
  std::int64_t top = max_numeric_id(p);
  if (avoid != nullptr) top = std::max(top, max_numeric_id(*avoid));
  std::int64_t stride = top + 1;
  if (stride % 2 != 0) ++stride;

  std::vector<Ballot> ballots;
  ballots.reserve(p.size() * static_cast<std::size_t>(lambda));
  for (std::int64_t copy = 0; copy < lambda; ++copy) {
    for (const auto& b : p.ballots()) {
      if (copy == 0) {
        ballots.push_back(b);
      } else if (auto v = numeric_id(b.voter); v && *v >= 0) {
        ballots.push_back({std::to_string(*v + copy * stride), b.interval});
      } else {
        ballots.push_back({b.voter + "#" + std::to_string(copy), b.interval});
      }
    }
  }
  return Profile(p.m(), std::move(ballots));
}

Profile replicate_and_combine(const Profile& p1, std::int64_t lambda, const Profile& p2) {
  return combine(replicate(p1, lambda, &p2), p2);
}

}  // namespace ivote
