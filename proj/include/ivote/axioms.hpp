#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivote/preferences.hpp"
#include "ivote/profile.hpp"
#include "ivote/rules.hpp"

namespace ivote::axioms {

/// A voting rule treated as a black box.
struct RuleFn {
  int m = 2;
  std::string name;
  std::function<Alternative(const Profile&)> eval;
  /// Optional fast path for rules that factor through the anonymized profile.
  std::function<Alternative(const AnonProfile&)> eval_anon;
  /// Optional: a λ₀ such that the winner of λ·p1 + p2 is the same for every λ ≥ λ₀.
  /// Only rules with inspectable internals (threshold rules) can provide it.
  std::function<std::int64_t(const Profile& p1, const Profile& p2)> stable_lambda;
  /// Set when the rule is a threshold rule; checkers that inspect Π_α use it.
  std::shared_ptr<const PositionThresholdRule> internals;

  Alternative operator()(const Profile& p) const { return eval(p); }
};

/// Wraps a (possibly unchecked) threshold rule, including its anonymous fast path and λ bound.
RuleFn to_rule_fn(const PositionThresholdRule& rule, std::string name = "");

/// λ₀ for a rule of the form "left-most x_i with Π_α(p, x_i) ≥ θ_i·n" (or with >): beyond λ₀
/// every sign of Π_α(λp1 + p2, x_i) − θ_i·n equals that of p1's gap, or p2's when p1's is zero.
std::int64_t threshold_stable_lambda(const WeightVector& alpha, const ThresholdVector& theta, const Profile& p1,
                                     const Profile& p2);

enum class Axiom {
  robustness,
  reinforcement,
  unanimity,
  strong_unanimity,
  majority,
  weak_efficiency,
  anonymity,
  continuity,
  strategyproofness,
  strong_uncompromisingness,
  shift_symmetry,
  orientation_symmetry,
};

std::string_view to_string(Axiom axiom);
/// Accepts the tags produced by to_string (e.g. "strong-unanimity"); throws unsupported otherwise.
Axiom parse_axiom(std::string_view tag);
const std::vector<Axiom>& all_axioms();

/// A failure together with the exact inputs needed to reproduce it.
struct Violation {
  Axiom axiom = Axiom::robustness;
  Profile profile;
  /// Second input profile: p2 for reinforcement/continuity.
  std::optional<Profile> other;
  std::optional<VoterId> voter;
  std::optional<Side> side;
  /// Alternative report (strategyproofness, strong uncompromisingness).
  std::optional<Interval> report;
  std::optional<prefs::WeakOrder> preference;
  /// Voter renaming (anonymity).
  std::optional<std::map<VoterId, VoterId>> renaming;
  /// Largest λ examined (continuity).
  std::optional<std::int64_t> lambda;
  /// Winner the checker observed on the decisive profile.
  Alternative observed;
  /// Human-readable requirement that `observed` fails.
  std::string required;
};

enum class Verdict { pass, vacuous, violation, undetermined };

std::string_view to_string(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::pass;
  std::optional<Violation> violation;

  bool ok() const { return verdict == Verdict::pass || verdict == Verdict::vacuous; }
};

/// All robustness failures of f at p, over every voter with |I| ≥ 2 and both sides.
std::vector<Violation> check_robustness(const RuleFn& f, const Profile& p);
/// Robustness for one (voter, side) deletion. Vacuous when the voter reports a singleton.
CheckResult check_robustness_at(const RuleFn& f, const Profile& p, const VoterId& voter, Side side);

/// f(p1) = f(p2) implies f(p1 + p2) = f(p1). Throws invalid-instance for overlapping voters.
CheckResult check_reinforcement(const RuleFn& f, const Profile& p1, const Profile& p2);

/// Unanimity on a profile where every voter reports {x_j}; vacuous for any other profile.
CheckResult check_unanimity_profile(const RuleFn& f, const Profile& p);
/// Unanimity for alternative j on synthesized profiles of 1..n_max voters.
CheckResult check_unanimity(const RuleFn& f, int m, int j, int n_max);
CheckResult check_strong_unanimity(const RuleFn& f, const Profile& p);
CheckResult check_majority_criterion(const RuleFn& f, const Profile& p);
CheckResult check_weak_efficiency(const RuleFn& f, const Profile& p);

/// f(p) = f(τ(p)) for the voter renaming τ.
CheckResult check_anonymity(const RuleFn& f, const Profile& p, const std::map<VoterId, VoterId>& renaming);

enum class ContinuityCase { same_or_right, left };

struct ContinuityResult {
  Verdict verdict = Verdict::pass;
  ContinuityCase which = ContinuityCase::same_or_right;
  /// The λ that satisfied the axiom.
  std::optional<std::int64_t> lambda;
  /// True when a stable-λ bound made the answer definite.
  bool analytic = false;
  std::optional<Violation> violation;
};

/// Right-biased continuity for the pair (p1, p2). Throws invalid-instance for overlapping voters.
///
/// Case f(p2) ⊵ f(p1) needs some λ with f(λp1 + p2) = f(p1). Case f(p1) ▷ f(p2) needs λ and
/// x_j ∈ ∪ I_i(p1) with f(p1) ⊵ f(λp1 + p2) ⊵ x_j. λ runs over 1..lambda_max; without a
/// stable-λ bound an exhausted search is undetermined rather than a violation.
ContinuityResult check_right_biased_continuity(const RuleFn& f, const Profile& p1, const Profile& p2,
                                               std::int64_t lambda_max = 1000);

/// Every profitable misreport of `voter` under each weakly single-peaked preference with
/// plateau I_voter, over all reports in Λ.
std::vector<Violation> check_strategyproofness(const RuleFn& f, const Profile& p, const VoterId& voter,
                                               int guard = 5);

/// Strong uncompromisingness for the i-variant where `voter` reports `new_interval`.
CheckResult check_strong_uncompromisingness(const RuleFn& f, const Profile& p, const VoterId& voter,
                                            Interval new_interval);

/// Moving every interval one step right moves the winner one step right.
/// Vacuous when some interval already ends at x_m.
CheckResult check_shift_symmetry(const RuleFn& f, const Profile& p);

/// Mirroring x_i ↔ x_{m+1-i} mirrors the winner, unless Π_α(p, x_i) = θ_i·n for some i.
CheckResult check_orientation_symmetry(const PositionThresholdRule& rule, const Profile& p);

/// Every interval moved one step right; requires right < m everywhere.
Profile shift_right(const Profile& p);
/// Every interval mirrored through x_i ↔ x_{m+1-i}.
Profile mirror(const Profile& p);

/// Which strong-uncompromisingness premise (1..5) covers winner w, old interval and new interval.
/// Premise 2 compares w against the new left endpoint, mirroring premise 1.
std::optional<int> uncompromising_premise(Alternative w, Interval old_interval, Interval new_interval);

/// Re-runs the checker on the witness; true when the same violation reappears.
/// Orientation symmetry needs the rule internals, from `ptr` or else from f.internals.
bool replay(const RuleFn& f, const Violation& v, const PositionThresholdRule* ptr = nullptr);

}  // namespace ivote::axioms
