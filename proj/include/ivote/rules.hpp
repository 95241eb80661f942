#pragma once

#include <optional>
#include <vector>

#include "ivote/profile.hpp"
#include "ivote/rational.hpp"

namespace ivote {

/// α ∈ [0,1]^m. The last entry never influences a position and is stored only for uniformity.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> alpha);
  static WeightVector constant(int m, Rational value);

  int m() const noexcept { return static_cast<int>(alpha_.size()); }
  const Rational& operator[](int k) const { return alpha_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<Rational>& values() const noexcept { return alpha_; }

  /// α_1 ≤ α_2 ≤ ... ≤ α_{m-1}.
  bool is_monotone() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> alpha_;
};

/// θ ∈ (0,1)^m, non-increasing. θ_m is inert because Π(·, x_m) = n.
class ThresholdVector {
 public:
  explicit ThresholdVector(std::vector<Rational> theta);
  static ThresholdVector constant(int m, Rational value);

  int m() const noexcept { return static_cast<int>(theta_.size()); }
  const Rational& operator[](int k) const { return theta_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<Rational>& values() const noexcept { return theta_; }

  friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;

 private:
  std::vector<Rational> theta_;
};

/// π_α([x_l, x_r], x_k): 0 left of the interval, α_k inside it except at x_r, 1 from x_r on.
Rational individual_position(const WeightVector& alpha, Interval iv, Alternative k);

/// Π_α(p, x_k), the exact sum of individual positions.
Rational collective_position(const WeightVector& alpha, const Profile& p, Alternative k);
Rational collective_position(const WeightVector& alpha, const AnonProfile& p, Alternative k);

/// Π_α(p, x_k) for k = 1..m.
std::vector<Rational> collective_positions(const WeightVector& alpha, const AnonProfile& p);

struct CompatibilityReport {
  bool compatible = true;
  /// Least i ∈ {1..m-2} where α_{i+1} − α_i < (θ_{i+1} − θ_i)·max(α_i/θ_i, (1−α_i)/(1−θ_i)).
  std::optional<int> first_violation;
};

CompatibilityReport check_compatible(const WeightVector& alpha, const ThresholdVector& theta);

/// θ_1 = ... = θ_{m-1}; the threshold shape forced by weak efficiency.
bool is_weakly_efficient_thresholds(const ThresholdVector& theta);

/// f(p) = left-most x_i with Π_α(p, x_i) ≥ θ_i·n.
class PositionThresholdRule {
 public:
  /// Throws incompatible-rule unless check_compatible(alpha, theta) holds.
  PositionThresholdRule(ThresholdVector theta, WeightVector alpha);

  /// Threshold rule without the compatibility requirement; such a rule need not be robust.
  static PositionThresholdRule unchecked(ThresholdVector theta, WeightVector alpha);

  int m() const noexcept { return theta_.m(); }
  const ThresholdVector& theta() const noexcept { return theta_; }
  const WeightVector& alpha() const noexcept { return alpha_; }
  bool compatible() const noexcept { return compatible_; }

  Alternative winner(const Profile& p) const;
  Alternative winner(const AnonProfile& p) const;

  /// θ_i·n for i = 1..m.
  std::vector<Rational> scaled_thresholds(std::int64_t n) const;

 private:
  struct UncheckedTag {};
  PositionThresholdRule(ThresholdVector theta, WeightVector alpha, UncheckedTag);

  ThresholdVector theta_;
  WeightVector alpha_;
  bool compatible_ = false;
};

/// Left-most index i with positions[i-1] ≥ thresholds[i-1]; m when none qualifies earlier.
Alternative first_meeting_threshold(const std::vector<Rational>& positions, const std::vector<Rational>& thresholds);

/// Phantom median winner on singleton-only profiles, using the peak-position count.
/// Throws not-singleton-domain when some voter reports more than one alternative.
Alternative phantom_median_winner(const ThresholdVector& theta, const Profile& p);

/// α = θ = (1/2, ..., 1/2).
PositionThresholdRule endpoint_median_rule(int m);

struct WeightedSingletonBallot {
  Alternative alternative;
  Rational weight;

  friend bool operator==(const WeightedSingletonBallot&, const WeightedSingletonBallot&) = default;
};

/// Splits [x_l, x_r] into weighted singleton ballots: α_l at x_l, α_i − α_{i−1} inside, 1 − α_{r−1} at x_r.
///
/// Weights sum to exactly 1 and reproduce Π_α for every alternative; zero weights are omitted.
/// A non-monotone α yields negative interior weights.
std::vector<WeightedSingletonBallot> decompose_interval(const WeightVector& alpha, Interval iv);

/// Π_α(p, x_k) recomputed from the decomposed ballots as Σ weight·π_SP.
Rational collective_position_decomposed(const WeightVector& alpha, const Profile& p, Alternative k);

}  // namespace ivote
