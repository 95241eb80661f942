#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ivote/axioms.hpp"
#include "ivote/profile.hpp"
#include "ivote/rules.hpp"

namespace ivote::search {

/// Enumeration cap used when the caller gives none: INTERVAL_VOTE_BUDGET if set, else 5,000,000.
std::uint64_t default_budget();

/// C(q+n−1, n) with q = m(m+1)/2: the number of anonymous profiles with n voters.
/// Saturates at UINT64_MAX.
std::uint64_t count_profiles(int m, int n);

/// Every multiset of n canonical intervals, as non-decreasing index sequences in lexicographic
/// order. Throws too-large when count_profiles(m, n) exceeds `budget`.
std::vector<AnonProfile> enumerate_profiles(int m, int n, std::uint64_t budget = default_budget());

/// Calls `visit` on each profile of enumerate_profiles(m, n) without materializing the list.
/// Stops early when `visit` returns false.
void for_each_profile(int m, int n, const std::function<bool(const AnonProfile&)>& visit,
                      std::uint64_t budget = default_budget());

/// n voters with ids 1..n, each on an interval drawn uniformly from the q intervals.
Profile random_profile(int m, int n, std::uint64_t seed);

struct SearchBounds {
  int m_min = 2;
  int m_max = 3;
  /// Largest electorate for single-profile axioms.
  int n_max = 3;
  /// Pairs (p1, p2) for reinforcement and continuity satisfy n1 + n2 ≤ pair_n_max.
  int pair_n_max = 4;
  /// Refuse campaigns with more instances than this.
  std::uint64_t budget = default_budget();
  std::int64_t lambda_max = 1000;
  /// Extra seeded random profiles per m for single-profile axioms, with n in (n_max, random_n_max].
  std::uint64_t random_samples = 0;
  int random_n_max = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Guard for the weak-order enumeration used by strategyproofness.
  int preference_guard = 5;
};

struct CampaignReport {
  std::string rule;
  axioms::Axiom axiom = axioms::Axiom::robustness;
  SearchBounds bounds;
  /// Instances the campaign would visit in full.
  std::uint64_t planned = 0;
  bool budget_exceeded = false;
  /// Counts cover the canonical prefix up to and including the first violation.
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t undetermined = 0;
  std::optional<axioms::Violation> first_violation;
  /// Wall-clock time; excluded from the deterministic JSON rendering unless asked for.
  double elapsed_seconds = 0.0;
};

using RuleFactory = std::function<axioms::RuleFn(int m)>;

/// Scans every instance up to the bounds for m in [m_min, m_max] and reports the violation that
/// comes first in canonical order. The result does not depend on bounds.workers.
CampaignReport falsify(const RuleFactory& factory, axioms::Axiom axiom, const SearchBounds& bounds);
/// Same, for a rule fixed to one m; m_min and m_max are replaced by f.m.
CampaignReport falsify(const axioms::RuleFn& f, axioms::Axiom axiom, SearchBounds bounds);

/// Winner as the n-th smallest of the 2n interval endpoints (each voter contributes l and r).
Alternative endpoint_median_oracle(const Profile& p);

enum class DeviationKind { theta_low, theta_high, alpha_low, alpha_high };

std::string_view to_string(DeviationKind kind);

/// A majority-criterion or strong-unanimity failure exhibited by a threshold rule other than the
/// endpoint-median rule. `w1`, `w2` are the group sizes for threshold deviations; `t` counts the
/// voters on {x_i, x_{i+1}} for weight deviations.
struct UniquenessWitness {
  DeviationKind kind;
  int index;
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;
  std::int64_t t = 0;
  axioms::Violation violation;
};

/// Checks thresholds θ_1..θ_{m−1} first, then weights α_1..α_{m−1}, and returns the smallest
/// witness for the first entry that differs from 1/2. Every witness has been confirmed by the
/// matching checker. Throws no-witness for the endpoint-median rule.
UniquenessWitness uniqueness_witness(const PositionThresholdRule& rule);

/// Fixture tags: constant, strict-threshold, log-parity-endpoint, even-voter-doubled,
/// profile-dependent-alpha.
const std::vector<std::string>& fixture_tags();

/// Rule for `tag` over m alternatives. `params` is "j" for constant (default 1); other fixtures
/// take none. strict-threshold uses `base` for (θ, α) when given and the endpoint-median vectors
/// otherwise. Throws unknown-fixture for other tags.
axioms::RuleFn fixture(const std::string& tag, const std::string& params, int m,
                       const PositionThresholdRule* base = nullptr);

/// α_1 of the profile-dependent fixture: 1/2 − #{voters whose interval misses x_1} / (2n).
Rational profile_dependent_alpha1(const AnonProfile& p);

/// The three four-voter profiles on two alternatives used to show that the profile-dependent
/// fixture is no fixed threshold rule, with the fixture's winners on them.
struct FixedRuleChain {
  std::array<Profile, 3> profiles;
  std::array<Alternative, 3> winners;
  std::array<Rational, 3> alpha1;
  /// Readable derivation: each winner's constraint on (θ_1, α_1) and the resulting contradiction.
  std::vector<std::string> steps;
  /// Whether some fixed (θ_1, α_1) reproduces all three winners: false when the chain closes.
  bool fixed_rule_possible = true;
};

FixedRuleChain fixed_rule_chain();

}  // namespace ivote::search
