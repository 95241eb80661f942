#include <gtest/gtest.h>

#include <map>

#include "ivote/error.hpp"
#include "ivote/io.hpp"
#include "ivote/search.hpp"
#include "oracles.hpp"

using namespace ivote;
using namespace ivote::search;
using axioms::Axiom;
using axioms::Verdict;

namespace {

std::vector<Interval> intervals_of(const Profile& p) {
  std::vector<Interval> out;
  for (const auto& b : p.ballots()) out.push_back(b.interval);
  return out;
}

SearchBounds suite_bounds() {
  SearchBounds b;
  b.m_min = 2;
  b.m_max = 3;
  b.n_max = 4;
  b.pair_n_max = 4;
  return b;
}

const std::vector<Axiom> characterization = {Axiom::robustness, Axiom::reinforcement, Axiom::unanimity,
                                             Axiom::anonymity, Axiom::continuity};

std::map<Axiom, bool> scorecard(const std::string& tag) {
  std::map<Axiom, bool> fails;
  for (Axiom a : characterization) {
    const auto r = falsify([&](int m) { return fixture(tag, "", m); }, a, suite_bounds());
    EXPECT_EQ(r.undetermined, 0u) << tag << " " << axioms::to_string(a);
    fails[a] = r.first_violation.has_value();
  }
  return fails;
}

void expect_fails_exactly(const std::string& tag, std::initializer_list<Axiom> failing) {
  const auto card = scorecard(tag);
  for (Axiom a : characterization) {
    const bool expected = std::find(failing.begin(), failing.end(), a) != failing.end();
    EXPECT_EQ(card.at(a), expected) << tag << " / " << axioms::to_string(a);
  }
}

}  // namespace

TEST(Falsify, EndpointMedianRobustAtDeskScale) {
  SearchBounds b;
  b.n_max = 4;
  const auto r = falsify(axioms::to_rule_fn(endpoint_median_rule(4)), Axiom::robustness, b);
  EXPECT_FALSE(r.first_violation);
  EXPECT_EQ(r.planned, r.checked);
  std::uint64_t expected = 0;
  for (int n = 1; n <= 4; ++n) expected += count_profiles(4, n);
  EXPECT_EQ(r.planned, expected);
}

TEST(Falsify, FindsFixtureViolations) {
  const auto parity = falsify([](int m) { return fixture("log-parity-endpoint", "", m); }, Axiom::reinforcement,
                              suite_bounds());
  ASSERT_TRUE(parity.first_violation);
  EXPECT_TRUE(axioms::replay(fixture("log-parity-endpoint", "", parity.first_violation->profile.m()),
                             *parity.first_violation));

  const auto strict = falsify([](int m) { return fixture("strict-threshold", "", m); }, Axiom::continuity,
                              suite_bounds());
  ASSERT_TRUE(strict.first_violation);
  EXPECT_EQ(strict.undetermined, 0u);
}

TEST(Falsify, CountsAreConsistent) {
  const auto r = falsify([](int m) { return fixture("constant", "", m); }, Axiom::unanimity, suite_bounds());
  ASSERT_TRUE(r.first_violation);
  EXPECT_EQ(r.checked, r.passed + r.vacuous + r.undetermined + 1);
  EXPECT_LE(r.checked, r.planned);
}

TEST(Falsify, DeterministicAcrossWorkers) {
  const std::vector<std::pair<std::string, Axiom>> cases = {
      {"log-parity-endpoint", Axiom::reinforcement}, {"even-voter-doubled", Axiom::anonymity},
      {"strict-threshold", Axiom::continuity},       {"profile-dependent-alpha", Axiom::robustness},
      {"constant", Axiom::strong_unanimity},         {"endpoint-median", Axiom::strategyproofness}};
  for (const auto& [tag, axiom] : cases) {
    std::string reference;
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
      SearchBounds b = suite_bounds();
      b.workers = workers;
      b.random_samples = 20;
      b.random_n_max = 6;
      const auto r = falsify([&](int m) {
        return tag == "endpoint-median" ? axioms::to_rule_fn(endpoint_median_rule(m)) : fixture(tag, "", m);
      }, axiom, b);
      auto j = io::to_json(r);
      j["bounds"].erase("workers");
      const std::string text = io::render(j, false);
      if (reference.empty()) {
        reference = text;
      } else {
        EXPECT_EQ(text, reference) << tag << " workers=" << workers;
      }
    }
  }
}

TEST(Falsify, BudgetIsReported) {
  SearchBounds b = suite_bounds();
  b.budget = 10;
  const auto r = falsify(axioms::to_rule_fn(endpoint_median_rule(3)), Axiom::robustness, b);
  EXPECT_TRUE(r.budget_exceeded);
  EXPECT_GT(r.planned, 10u);
}

TEST(Scorecard, IndependenceFixtures) {
  expect_fails_exactly("constant", {Axiom::unanimity});
  expect_fails_exactly("strict-threshold", {Axiom::continuity});
  expect_fails_exactly("log-parity-endpoint", {Axiom::reinforcement});
  expect_fails_exactly("even-voter-doubled", {Axiom::anonymity});
}

TEST(Scorecard, EndpointMedianPassesAll) {
  for (Axiom a : characterization) {
    const auto r = falsify([](int m) { return axioms::to_rule_fn(endpoint_median_rule(m)); }, a, suite_bounds());
    EXPECT_FALSE(r.first_violation) << axioms::to_string(a);
    EXPECT_EQ(r.undetermined, 0u);
  }
}

TEST(Scorecard, ProfileDependentAlpha) {
  for (Axiom a : {Axiom::robustness, Axiom::anonymity, Axiom::unanimity}) {
    const auto r = falsify([](int m) { return fixture("profile-dependent-alpha", "", m); }, a, suite_bounds());
    EXPECT_FALSE(r.first_violation) << axioms::to_string(a);
  }
  const auto r = falsify([](int m) { return fixture("profile-dependent-alpha", "", m); }, Axiom::reinforcement,
                         suite_bounds());
  EXPECT_TRUE(r.first_violation);
}

TEST(Fixtures, ProfileDependentAlphaContinuityCounterexample) {
  // p1 = {[x_1,x_2]} and p2 = {x_1},{x_2} both elect x_1, but every λ·p1 + p2 elects x_2.
  const auto f = fixture("profile-dependent-alpha", "", 2);
  const Profile p1 = Profile::from_intervals(2, {{1, 2}});
  const Profile p2 = Profile::from_intervals(2, {{1, 1}, {2, 2}}, 2);
  for (std::int64_t lambda = 1; lambda <= 200; ++lambda) {
    std::vector<Interval> mix(static_cast<std::size_t>(lambda), Interval{1, 2});
    mix.push_back({1, 1});
    mix.push_back({2, 2});
    const auto n = static_cast<std::int64_t>(mix.size());
    const Rational a1 = Rational(1, 2) - Rational(1, 2 * n);
    EXPECT_EQ(oracle::threshold_winner({Rational(1, 2), Rational(1, 2)}, {a1, 1}, mix), 2);
  }
  EXPECT_EQ(f(p1).index, 1);
  EXPECT_EQ(f(p2).index, 1);
  const auto r = axioms::check_right_biased_continuity(f, p1, p2);
  EXPECT_EQ(r.verdict, Verdict::violation);
  EXPECT_TRUE(r.analytic);
}

TEST(Fixtures, ProfileDependentAlphaFormula) {
  oracle::Gen gen(61);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = gen.uniform(2, 5);
    const auto ivs = gen.intervals(m, gen.uniform(1, 8));
    const Profile p = Profile::from_intervals(m, ivs);
    const auto n = static_cast<std::int64_t>(ivs.size());
    std::int64_t miss = 0;
    for (const auto& iv : ivs) miss += iv.left > 1;
    const Rational a1 = Rational(1, 2) - Rational(miss, 2 * n);
    EXPECT_EQ(profile_dependent_alpha1(anonymize(p)), a1);
    std::vector<Rational> alpha(static_cast<std::size_t>(m), Rational(1));
    alpha[0] = a1;
    const std::vector<Rational> theta(static_cast<std::size_t>(m), Rational(1, 2));
    EXPECT_EQ(fixture("profile-dependent-alpha", "", m)(p).index, oracle::threshold_winner(theta, alpha, ivs));
  }
}

TEST(Fixtures, Definitions) {
  oracle::Gen gen(62);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = gen.uniform(2, 5);
    const auto ivs = gen.intervals(m, gen.uniform(1, 9));
    const Profile p = Profile::from_intervals(m, ivs);
    const auto n = ivs.size();
    EXPECT_EQ(fixture("constant", "", m)(p).index, 1);
    EXPECT_EQ(fixture("constant", std::to_string(m), m)(p).index, m);

    int ceil_log = 0;
    while ((std::size_t{1} << ceil_log) < n) ++ceil_log;
    const std::vector<Rational> half(static_cast<std::size_t>(m), Rational(1, 2));
    const std::vector<Rational> parity_alpha(static_cast<std::size_t>(m), Rational(ceil_log % 2 == 1 ? 1 : 0));
    EXPECT_EQ(fixture("log-parity-endpoint", "", m)(p).index, oracle::threshold_winner(half, parity_alpha, ivs));

    auto doubled = ivs;
    for (std::size_t k = 0; k < n; ++k)
      if ((k + 1) % 2 == 0) doubled.push_back(ivs[k]);
    EXPECT_EQ(fixture("even-voter-doubled", "", m)(p).index, oracle::endpoint_median(doubled, m));

    // Strict comparison: the left-most x_i whose position exceeds θ_i·n.
    int strict = m;
    for (int k = 1; k < m; ++k) {
      if (oracle::position(half, ivs, k) > Rational(static_cast<std::int64_t>(n), 2)) {
        strict = k;
        break;
      }
    }
    EXPECT_EQ(fixture("strict-threshold", "", m)(p).index, strict);
  }
  EXPECT_THROW(fixture("median-of-medians", "", 3), Error);
}

TEST(Oracle, EndpointMedianExhaustive) {
  for (int m = 2; m <= 4; ++m) {
    const auto rule = endpoint_median_rule(m);
    for (int n = 1; n <= 4; ++n) {
      for (const auto& a : enumerate_profiles(m, n)) {
        const Profile p = a.identify();
        const int expected = oracle::endpoint_median(intervals_of(p), m);
        EXPECT_EQ(rule.winner(a).index, expected);
        EXPECT_EQ(endpoint_median_oracle(p).index, expected);
      }
    }
  }
}

TEST(Oracle, EndpointMedianRandom) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const int m = 2 + static_cast<int>(seed % 7);
    const int n = 1 + static_cast<int>((seed * 7) % 20);
    const Profile p = random_profile(m, n, seed);
    EXPECT_EQ(endpoint_median_rule(m).winner(p).index, oracle::endpoint_median(intervals_of(p), m));
  }
}

TEST(Uniqueness, Examples) {
  const auto theta_low = uniqueness_witness(PositionThresholdRule(
      ThresholdVector::constant(3, Rational(1, 3)), WeightVector::constant(3, Rational(1, 2))));
  EXPECT_EQ(theta_low.kind, DeviationKind::theta_low);
  EXPECT_EQ(theta_low.index, 1);
  EXPECT_EQ(theta_low.w1, 2);
  EXPECT_EQ(theta_low.w2, 3);
  EXPECT_EQ(theta_low.violation.axiom, Axiom::majority);
  EXPECT_EQ(theta_low.violation.observed.index, 1);

  const auto rule = PositionThresholdRule(ThresholdVector::constant(3, Rational(1, 2)),
                                          WeightVector({Rational(1, 4), Rational(1, 2), Rational(1, 2)}));
  const auto alpha_low = uniqueness_witness(rule);
  EXPECT_EQ(alpha_low.kind, DeviationKind::alpha_low);
  EXPECT_EQ(alpha_low.t, 5);
  EXPECT_EQ(alpha_low.violation.axiom, Axiom::strong_unanimity);
  EXPECT_EQ(collective_position(rule.alpha(), alpha_low.violation.profile, {1}), Rational(9, 4));
  EXPECT_EQ(alpha_low.violation.profile.size(), 6u);

  try {
    uniqueness_witness(endpoint_median_rule(4));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_witness);
  }
}

TEST(Uniqueness, RandomRulesAlwaysYieldConfirmedWitness) {
  oracle::Gen gen(91);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = gen.uniform(2, 5);
    const auto rule = PositionThresholdRule::unchecked(ThresholdVector(gen.thresholds(m)), WeightVector(gen.weights(m)));
    bool is_em = true;
    for (int k = 1; k < m; ++k) is_em = is_em && rule.theta()[k] == Rational(1, 2) && rule.alpha()[k] == Rational(1, 2);
    if (is_em) continue;
    const auto w = uniqueness_witness(rule);
    const auto f = axioms::to_rule_fn(rule);
    EXPECT_TRUE(axioms::replay(f, w.violation));
    // The oracle agrees with the observed winner.
    EXPECT_EQ(oracle::threshold_winner(rule.theta().values(), rule.alpha().values(), intervals_of(w.violation.profile)),
              w.violation.observed.index);
  }
}

TEST(FixedRuleChain, ChainClosesAndNoFixedRuleFits) {
  const auto chain = fixed_rule_chain();
  EXPECT_FALSE(chain.fixed_rule_possible);
  const auto f = fixture("profile-dependent-alpha", "", 2);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(chain.profiles[k].size(), 4u);
    EXPECT_EQ(f(chain.profiles[k]), chain.winners[k]);
  }
  EXPECT_EQ(chain.winners[0].index, 1);
  EXPECT_EQ(chain.winners[1].index, 1);
  EXPECT_EQ(chain.winners[2].index, 2);

  // Grid over (θ_1, α_1): no fixed rule reproduces the three winners.
  int fits = 0;
  for (int den = 1; den <= 48; ++den) {
    for (int tn = 1; tn < den; ++tn) {
      for (int an = 0; an <= den; ++an) {
        const std::vector<Rational> theta{Rational(tn, den), Rational(tn, den)};
        const std::vector<Rational> alpha{Rational(an, den), 1};
        bool all = true;
        for (std::size_t k = 0; k < 3 && all; ++k)
          all = oracle::threshold_winner(theta, alpha, intervals_of(chain.profiles[k])) == chain.winners[k].index;
        fits += all;
      }
    }
  }
  EXPECT_EQ(fits, 0);
}
