#include "ivote/witness.hpp"

#include <optional>
#include <string>
#include <vector>

#include "ivote/error.hpp"

namespace ivote {

namespace {

struct Counts {
  std::int64_t w1;
  std::int64_t w2;
};

// Smallest n with some w1 = ⌈θ_i n / α_i⌉ ≤ n and w1·α_{i+1} < θ_{i+1}·n.
std::optional<Counts> case_one_counts(const WeightVector& a, const ThresholdVector& t, int i, std::int64_t max_n) {
  const Rational lower = t[i] / a[i];
  for (std::int64_t n = 1; n <= max_n; ++n) {
    const std::int64_t w1 = (lower * Rational(n)).ceil();
    if (w1 < 1 || w1 > n) continue;
    if (Rational(w1) * a[i + 1] < t[i + 1] * Rational(n)) return Counts{w1, n - w1};
  }
  return std::nullopt;
}

// Smallest n with (1−θ_{i+1})/(1−α_{i+1}) < w1/n ≤ (1−θ_i)/(1−α_i) and w1, w2 ≥ 1.
std::optional<Counts> case_two_counts(const WeightVector& a, const ThresholdVector& t, int i, std::int64_t max_n) {
  const Rational one{1};
  const Rational lower = (one - t[i + 1]) / (one - a[i + 1]);
  const Rational upper = (one - t[i]) / (one - a[i]);
  for (std::int64_t n = 2; n <= max_n; ++n) {
    const std::int64_t w1 = std::max<std::int64_t>(1, (lower * Rational(n)).floor() + 1);
    if (w1 >= n) continue;
    if (Rational(w1) <= upper * Rational(n)) return Counts{w1, n - w1};
  }
  return std::nullopt;
}

}  // namespace

IncompatibilityWitness incompatibility_witness(const WeightVector& alpha, const ThresholdVector& theta,
                                               std::int64_t max_voters) {
  const auto report = check_compatible(alpha, theta);
  if (report.compatible) throw Error(ErrorKind::no_witness, "weights and thresholds are compatible");
  const int i = *report.first_violation;
  const int m = alpha.m();
  const WitnessCase which =
      alpha[i] >= theta[i] ? WitnessCase::weight_at_least_threshold : WitnessCase::threshold_above_weight;

  auto counts = which == WitnessCase::weight_at_least_threshold ? case_one_counts(alpha, theta, i, max_voters)
                                                                 : case_two_counts(alpha, theta, i, max_voters);
  if (!counts) {
    throw Error(ErrorKind::no_witness, "no witness with at most " + std::to_string(max_voters) + " voters");
  }

  const Interval wide{i, i + 2};
  const Interval other = which == WitnessCase::weight_at_least_threshold ? Interval::singleton(m) : Interval::singleton(i);
  std::vector<Interval> intervals(static_cast<std::size_t>(counts->w1), wide);
  intervals.insert(intervals.end(), static_cast<std::size_t>(counts->w2), other);
  const Profile start = Profile::from_intervals(m, intervals);

  const auto rule = axioms::to_rule_fn(PositionThresholdRule::unchecked(theta, alpha));
  auto step = [&](const Profile& bigger, const VoterId& voter, Side side) -> std::optional<axioms::Violation> {
    return axioms::check_robustness_at(rule, bigger, voter, side).violation;
  };
  auto done = [&](axioms::Violation v) {
    return IncompatibilityWitness{i, which, counts->w1, counts->w2, start, std::move(v)};
  };

  Profile current = start;
  for (std::int64_t k = 1; k <= counts->w1; ++k) {
    const VoterId voter = std::to_string(k);
    if (auto v = step(current, voter, Side::left)) return done(std::move(*v));
    current = delete_endpoint(current, voter, Side::left);
  }
  if (which == WitnessCase::threshold_above_weight) {
    for (std::int64_t k = counts->w1 + 1; k <= counts->w1 + counts->w2; ++k) {
      const VoterId voter = std::to_string(k);
      Profile widened = with_interval(current, voter, Interval{i, i + 1});
      if (auto v = step(widened, voter, Side::right)) return done(std::move(*v));
      if (auto v = step(widened, voter, Side::left)) return done(std::move(*v));
      current = delete_endpoint(widened, voter, Side::left);
    }
  }
  throw Error(ErrorKind::internal, "deletion chain finished without a robustness failure");
}

}  // namespace ivote
