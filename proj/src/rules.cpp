#include "ivote/rules.hpp"

#include <string>

#include "ivote/error.hpp"

namespace ivote {

namespace {

const Rational kZero{0};
const Rational kOne{1};

void require_same_m(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::incompatible_profiles,
                std::string(what) + ": m mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
  validate_alternative_count(m());
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < kZero || alpha_[i] > kOne) {
      throw Error(ErrorKind::invalid_weights,
                  "alpha_" + std::to_string(i + 1) + " = " + alpha_[i].str() + " outside [0,1]");
    }
  }
}

WeightVector WeightVector::constant(int m, Rational value) {
  validate_alternative_count(m);
  return WeightVector(std::vector<Rational>(static_cast<std::size_t>(m), value));
}

bool WeightVector::is_monotone() const {
  for (int i = 1; i + 1 < m(); ++i) {
    if ((*this)[i + 1] < (*this)[i]) return false;
  }
  return true;
}

ThresholdVector::ThresholdVector(std::vector<Rational> theta) : theta_(std::move(theta)) {
  validate_alternative_count(m());
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (theta_[i] <= kZero || theta_[i] >= kOne) {
      throw Error(ErrorKind::invalid_thresholds,
                  "theta_" + std::to_string(i + 1) + " = " + theta_[i].str() + " outside (0,1)");
    }
    if (i > 0 && theta_[i] > theta_[i - 1]) {
      throw Error(ErrorKind::invalid_thresholds, "theta must be non-increasing; theta_" + std::to_string(i + 1) +
                                                     " = " + theta_[i].str() + " > theta_" + std::to_string(i) +
                                                     " = " + theta_[i - 1].str());
    }
  }
}

ThresholdVector ThresholdVector::constant(int m, Rational value) {
  validate_alternative_count(m);
  return ThresholdVector(std::vector<Rational>(static_cast<std::size_t>(m), value));
}

Rational individual_position(const WeightVector& alpha, Interval iv, Alternative k) {
  validate_alternative(alpha.m(), k.index);
  validate_alternative(alpha.m(), iv.left);
  validate_alternative(alpha.m(), iv.right);
  if (k.index < iv.left) return kZero;
  if (k.index >= iv.right) return kOne;
  return alpha[k.index];
}

Rational collective_position(const WeightVector& alpha, const Profile& p, Alternative k) {
  require_same_m(alpha.m(), p.m(), "collective_position");
  Rational sum;
  for (const auto& b : p.ballots()) sum += individual_position(alpha, b.interval, k);
  return sum;
}

Rational collective_position(const WeightVector& alpha, const AnonProfile& p, Alternative k) {
  require_same_m(alpha.m(), p.m(), "collective_position");
  validate_alternative(p.m(), k.index);
  // Voters with r ≤ k contribute 1 each; voters with l ≤ k < r contribute α_k each.
  std::int64_t at_or_left = 0;
  std::int64_t straddling = 0;
  std::size_t idx = 0;
  for (int l = 1; l <= p.m(); ++l) {
    for (int r = l; r <= p.m(); ++r, ++idx) {
      auto c = p.counts()[idx];
      if (c == 0) continue;
      if (r <= k.index) {
        at_or_left += c;
      } else if (l <= k.index) {
        straddling += c;
      }
    }
  }
  return Rational(at_or_left) + Rational(straddling) * alpha[k.index];
}

std::vector<Rational> collective_positions(const WeightVector& alpha, const AnonProfile& p) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(p.m()));
  for (int k = 1; k <= p.m(); ++k) out.push_back(collective_position(alpha, p, Alternative{k}));
  return out;
}

CompatibilityReport check_compatible(const WeightVector& alpha, const ThresholdVector& theta) {
  require_same_m(alpha.m(), theta.m(), "check_compatible");
  for (int i = 1; i + 2 <= alpha.m(); ++i) {
    Rational slope = max(alpha[i] / theta[i], (kOne - alpha[i]) / (kOne - theta[i]));
    if (alpha[i + 1] - alpha[i] < (theta[i + 1] - theta[i]) * slope) return {false, i};
  }
  return {true, std::nullopt};
}

bool is_weakly_efficient_thresholds(const ThresholdVector& theta) {
  for (int i = 2; i < theta.m(); ++i) {
    if (theta[i] != theta[1]) return false;
  }
  return true;
}

PositionThresholdRule::PositionThresholdRule(ThresholdVector theta, WeightVector alpha)
    : PositionThresholdRule(std::move(theta), std::move(alpha), UncheckedTag{}) {
  if (!compatible_) {
    auto report = check_compatible(alpha_, theta_);
    throw Error(ErrorKind::incompatible_rule,
                "weights and thresholds violate the compatibility inequality at i = " +
                    std::to_string(*report.first_violation));
  }
}

PositionThresholdRule::PositionThresholdRule(ThresholdVector theta, WeightVector alpha, UncheckedTag)
    : theta_(std::move(theta)), alpha_(std::move(alpha)) {
  require_same_m(theta_.m(), alpha_.m(), "PositionThresholdRule");
  compatible_ = check_compatible(alpha_, theta_).compatible;
}

PositionThresholdRule PositionThresholdRule::unchecked(ThresholdVector theta, WeightVector alpha) {
  return PositionThresholdRule(std::move(theta), std::move(alpha), UncheckedTag{});
}

std::vector<Rational> PositionThresholdRule::scaled_thresholds(std::int64_t n) const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(m()));
  for (int i = 1; i <= m(); ++i) out.push_back(theta_[i] * Rational(n));
  return out;
}

Alternative first_meeting_threshold(const std::vector<Rational>& positions, const std::vector<Rational>& thresholds) {
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    if (positions[i] >= thresholds[i]) return Alternative{static_cast<int>(i) + 1};
  }
  return Alternative{static_cast<int>(positions.size())};
}

Alternative PositionThresholdRule::winner(const AnonProfile& p) const {
  require_same_m(m(), p.m(), "winner");
  auto bars = scaled_thresholds(p.voters());
  for (int i = 1; i < m(); ++i) {
    if (collective_position(alpha_, p, Alternative{i}) >= bars[static_cast<std::size_t>(i - 1)]) return Alternative{i};
  }
  return Alternative{m()};
}

Alternative PositionThresholdRule::winner(const Profile& p) const { return winner(anonymize(p)); }

Alternative phantom_median_winner(const ThresholdVector& theta, const Profile& p) {
  require_same_m(theta.m(), p.m(), "phantom_median_winner");
  std::vector<std::int64_t> peaks(static_cast<std::size_t>(p.m() + 1), 0);
  for (const auto& b : p.ballots()) {
    if (!b.interval.is_singleton()) {
      throw Error(ErrorKind::not_singleton_domain, "voter \"" + b.voter + "\" reports a non-singleton interval");
    }
    ++peaks[static_cast<std::size_t>(b.interval.left)];
  }
  auto n = Rational(static_cast<std::int64_t>(p.size()));
  std::int64_t weakly_left = 0;
  for (int i = 1; i < p.m(); ++i) {
    weakly_left += peaks[static_cast<std::size_t>(i)];
    if (Rational(weakly_left) >= theta[i] * n) return Alternative{i};
  }
  return Alternative{p.m()};
}

PositionThresholdRule endpoint_median_rule(int m) {
  validate_alternative_count(m);
  return PositionThresholdRule(ThresholdVector::constant(m, Rational(1, 2)), WeightVector::constant(m, Rational(1, 2)));
}

std::vector<WeightedSingletonBallot> decompose_interval(const WeightVector& alpha, Interval iv) {
  validate_alternative(alpha.m(), iv.left);
  validate_alternative(alpha.m(), iv.right);
  if (iv.left > iv.right) throw Error(ErrorKind::invalid_interval, "left > right");
  std::vector<WeightedSingletonBallot> out;
  auto push = [&](int k, Rational w) {
    if (w.sign() != 0) out.push_back({Alternative{k}, w});
  };
  if (iv.is_singleton()) {
    push(iv.left, kOne);
    return out;
  }
  push(iv.left, alpha[iv.left]);
  for (int i = iv.left + 1; i < iv.right; ++i) push(i, alpha[i] - alpha[i - 1]);
  push(iv.right, kOne - alpha[iv.right - 1]);
  return out;
}

Rational collective_position_decomposed(const WeightVector& alpha, const Profile& p, Alternative k) {
  require_same_m(alpha.m(), p.m(), "collective_position_decomposed");
  validate_alternative(p.m(), k.index);
  Rational sum;
  for (const auto& b : p.ballots()) {
    for (const auto& piece : decompose_interval(alpha, b.interval)) {
      // π_SP of a singleton ballot: 1 when its alternative is weakly left of x_k.
      if (piece.alternative.index <= k.index) sum += piece.weight;
    }
  }
  return sum;
}

}  // namespace ivote
