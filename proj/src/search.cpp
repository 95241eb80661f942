#include "ivote/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "ivote/error.hpp"

namespace ivote::search {

using axioms::Axiom;
using axioms::CheckResult;
using axioms::RuleFn;
using axioms::Verdict;
using axioms::Violation;

std::uint64_t default_budget() {
  constexpr std::uint64_t kDefault = 5'000'000;
  const char* env = std::getenv("INTERVAL_VOTE_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return kDefault;
  return v;
}

std::uint64_t count_profiles(int m, int n) {
  validate_alternative_count(m);
  if (n < 0) throw Error(ErrorKind::invalid_instance, "negative voter count");
  const auto q = static_cast<unsigned __int128>(interval_count(m));
  // C(q+n−1, n) built as a running product of exact binomials.
  unsigned __int128 acc = 1;
  constexpr auto cap = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  for (int k = 1; k <= n; ++k) {
    acc = acc * (q - 1 + static_cast<unsigned>(k)) / static_cast<unsigned>(k);
    if (acc > cap) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

void for_each_profile(int m, int n, const std::function<bool(const AnonProfile&)>& visit, std::uint64_t budget) {
  if (n < 1) throw Error(ErrorKind::invalid_profile, "profiles need at least one voter");
  const std::uint64_t total = count_profiles(m, n);
  if (total > budget) {
    throw Error(ErrorKind::too_large, std::to_string(total) + " profiles for m=" + std::to_string(m) +
                                          ", n=" + std::to_string(n) + " exceed the budget of " +
                                          std::to_string(budget));
  }
  const int q = static_cast<int>(interval_count(m));
  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    for (int s : seq) ++counts[static_cast<std::size_t>(s)];
    if (!visit(AnonProfile(m, std::move(counts)))) return;

    int pos = n - 1;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == q - 1) --pos;
    if (pos < 0) return;
    const int next = seq[static_cast<std::size_t>(pos)] + 1;
    for (int k = pos; k < n; ++k) seq[static_cast<std::size_t>(k)] = next;
  }
}

std::vector<AnonProfile> enumerate_profiles(int m, int n, std::uint64_t budget) {
  std::vector<AnonProfile> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count_profiles(m, n), budget)));
  for_each_profile(
      m, n,
      [&](const AnonProfile& p) {
        out.push_back(p);
        return true;
      },
      budget);
  return out;
}

Profile random_profile(int m, int n, std::uint64_t seed) {
  validate_alternative_count(m);
  if (n < 1) throw Error(ErrorKind::invalid_profile, "profiles need at least one voter");
  const auto intervals = canonical_intervals(m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, intervals.size() - 1);
  std::vector<Interval> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) chosen.push_back(intervals[pick(rng)]);
  return Profile::from_intervals(m, chosen);
}

// ---------------------------------------------------------------------------------------------
// Campaigns

namespace {

bool is_pair_axiom(Axiom a) { return a == Axiom::reinforcement || a == Axiom::continuity; }

struct Instance {
  const RuleFn* rule;
  const Profile* p1;
  const AnonProfile* a2;  // pair axioms only
  std::int64_t p2_first_id;
};

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::optional<Violation> violation;
};

Outcome from_check(CheckResult r) { return Outcome{r.verdict, std::move(r.violation)}; }

Outcome first_of(std::vector<Violation> found, bool any_premise) {
  if (!found.empty()) return Outcome{Verdict::violation, std::move(found.front())};
  return Outcome{any_premise ? Verdict::pass : Verdict::vacuous, std::nullopt};
}

Outcome check_anonymity_all(const RuleFn& f, const Profile& p) {
  std::vector<VoterId> ids;
  for (const auto& b : p.ballots()) ids.push_back(b.voter);
  std::vector<VoterId> perm = ids;
  std::sort(perm.begin(), perm.end());
  auto try_renaming = [&](const std::map<VoterId, VoterId>& renaming) -> std::optional<Outcome> {
    auto r = axioms::check_anonymity(f, p, renaming);
    if (!r.ok()) return from_check(std::move(r));
    return std::nullopt;
  };
  do {
    std::map<VoterId, VoterId> renaming;
    for (std::size_t k = 0; k < ids.size(); ++k) renaming[ids[k]] = perm[k];
    if (auto bad = try_renaming(renaming)) return std::move(*bad);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Fresh ids, shifted past every numeric id in use.
  const std::int64_t shift = max_numeric_id(p);
  std::map<VoterId, VoterId> fresh;
  for (const auto& id : ids) {
    char* end = nullptr;
    const long long v = std::strtoll(id.c_str(), &end, 10);
    fresh[id] = (end != id.c_str() && *end == '\0') ? std::to_string(v + shift) : id + "'";
  }
  if (auto bad = try_renaming(fresh)) return std::move(*bad);
  return Outcome{Verdict::pass, std::nullopt};
}

Outcome evaluate(const Instance& inst, Axiom axiom, const SearchBounds& b) {
  const RuleFn& f = *inst.rule;
  const Profile& p = *inst.p1;
  switch (axiom) {
    case Axiom::robustness: {
      const bool any = std::any_of(p.ballots().begin(), p.ballots().end(),
                                   [](const Ballot& x) { return !x.interval.is_singleton(); });
      return first_of(axioms::check_robustness(f, p), any);
    }
    case Axiom::reinforcement:
      return from_check(axioms::check_reinforcement(f, p, inst.a2->identify(inst.p2_first_id)));
    case Axiom::continuity: {
      auto r = axioms::check_right_biased_continuity(f, p, inst.a2->identify(inst.p2_first_id), b.lambda_max);
      return Outcome{r.verdict, std::move(r.violation)};
    }
    case Axiom::unanimity: return from_check(axioms::check_unanimity_profile(f, p));
    case Axiom::strong_unanimity: return from_check(axioms::check_strong_unanimity(f, p));
    case Axiom::majority: return from_check(axioms::check_majority_criterion(f, p));
    case Axiom::weak_efficiency: return from_check(axioms::check_weak_efficiency(f, p));
    case Axiom::shift_symmetry: return from_check(axioms::check_shift_symmetry(f, p));
    case Axiom::orientation_symmetry:
      return from_check(axioms::check_orientation_symmetry(*f.internals, p));
    case Axiom::anonymity: return check_anonymity_all(f, p);
    case Axiom::strategyproofness: {
      std::vector<Violation> found;
      for (const auto& ballot : p.ballots()) {
        found = axioms::check_strategyproofness(f, p, ballot.voter, b.preference_guard);
        if (!found.empty()) break;
      }
      return first_of(std::move(found), true);
    }
    case Axiom::strong_uncompromisingness: {
      bool any = false;
      for (const auto& ballot : p.ballots()) {
        for (const auto& iv : canonical_intervals(p.m())) {
          if (iv == ballot.interval) continue;
          auto r = axioms::check_strong_uncompromisingness(f, p, ballot.voter, iv);
          if (r.verdict == Verdict::violation) return from_check(std::move(r));
          any = any || r.verdict == Verdict::pass;
        }
      }
      return Outcome{any ? Verdict::pass : Verdict::vacuous, std::nullopt};
    }
  }
  throw Error(ErrorKind::unsupported, "axiom not handled");
}

// Instance lists for one campaign; containers are deques so pointers stay valid.
struct Plan {
  std::deque<RuleFn> rules;
  std::deque<Profile> profiles;
  std::deque<AnonProfile> anon;
  std::vector<Instance> instances;
};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t planned_instances(Axiom axiom, const SearchBounds& b) {
  std::uint64_t total = 0;
  for (int m = b.m_min; m <= b.m_max; ++m) {
    if (axiom == Axiom::unanimity) {
      total = saturating_add(total, static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(b.n_max));
    } else if (is_pair_axiom(axiom)) {
      for (int n1 = 1; n1 < b.pair_n_max; ++n1) {
        for (int n2 = 1; n1 + n2 <= b.pair_n_max; ++n2) {
          total = saturating_add(total, saturating_mul(count_profiles(m, n1), count_profiles(m, n2)));
        }
      }
    } else {
      for (int n = 1; n <= b.n_max; ++n) total = saturating_add(total, count_profiles(m, n));
      if (b.random_n_max > b.n_max) total = saturating_add(total, b.random_samples);
    }
  }
  return total;
}

void build_plan(Plan& plan, const RuleFactory& factory, Axiom axiom, const SearchBounds& b) {
  for (int m = b.m_min; m <= b.m_max; ++m) {
    const RuleFn* rule = &plan.rules.emplace_back(factory(m));
    if (rule->m != m) throw Error(ErrorKind::invalid_instance, "rule factory returned a rule for the wrong m");
    if (axiom == Axiom::orientation_symmetry && !rule->internals) {
      throw Error(ErrorKind::unsupported, "orientation symmetry needs a threshold rule, not " + rule->name);
    }

    if (axiom == Axiom::unanimity) {
      for (int j = 1; j <= m; ++j) {
        for (int n = 1; n <= b.n_max; ++n) {
          std::vector<Interval> ivs(static_cast<std::size_t>(n), Interval::singleton(j));
          plan.instances.push_back({rule, &plan.profiles.emplace_back(Profile::from_intervals(m, ivs)), nullptr, 0});
        }
      }
      continue;
    }

    if (is_pair_axiom(axiom)) {
      std::vector<std::pair<std::size_t, std::size_t>> ranges(static_cast<std::size_t>(b.pair_n_max) + 1);
      for (int n = 1; n < b.pair_n_max; ++n) {
        const std::size_t begin = plan.anon.size();
        for_each_profile(
            m, n,
            [&](const AnonProfile& a) {
              plan.anon.push_back(a);
              plan.profiles.push_back(a.identify(1));
              return true;
            },
            b.budget);
        ranges[static_cast<std::size_t>(n)] = {begin, plan.anon.size()};
      }
      for (int n1 = 1; n1 < b.pair_n_max; ++n1) {
        for (int n2 = 1; n1 + n2 <= b.pair_n_max; ++n2) {
          const auto [b1, e1] = ranges[static_cast<std::size_t>(n1)];
          const auto [b2, e2] = ranges[static_cast<std::size_t>(n2)];
          for (std::size_t x = b1; x < e1; ++x) {
            for (std::size_t y = b2; y < e2; ++y) {
              plan.instances.push_back({rule, &plan.profiles[x], &plan.anon[y], n1 + 1});
            }
          }
        }
      }
      continue;
    }

    for (int n = 1; n <= b.n_max; ++n) {
      for_each_profile(
          m, n,
          [&](const AnonProfile& a) {
            plan.instances.push_back({rule, &plan.profiles.emplace_back(a.identify(1)), nullptr, 0});
            return true;
          },
          b.budget);
    }
    if (b.random_n_max > b.n_max) {
      std::mt19937_64 rng(b.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(m)));
      std::uniform_int_distribution<int> size(b.n_max + 1, b.random_n_max);
      for (std::uint64_t s = 0; s < b.random_samples; ++s) {
        const int n = size(rng);
        const std::uint64_t seed = rng();
        plan.instances.push_back({rule, &plan.profiles.emplace_back(random_profile(m, n, seed)), nullptr, 0});
      }
    }
  }
}

}  // namespace

CampaignReport falsify(const RuleFactory& factory, Axiom axiom, const SearchBounds& bounds) {
  const auto started = std::chrono::steady_clock::now();
  if (bounds.m_min < 2 || bounds.m_max < bounds.m_min) throw Error(ErrorKind::invalid_instance, "bad m range");
  if (bounds.n_max < 1 || bounds.pair_n_max < 2) throw Error(ErrorKind::invalid_instance, "bad voter bounds");

  CampaignReport report;
  report.axiom = axiom;
  report.bounds = bounds;
  report.planned = planned_instances(axiom, bounds);
  report.rule = factory(bounds.m_min).name;
  if (report.planned > bounds.budget) {
    report.budget_exceeded = true;
    return report;
  }

  Plan plan;
  build_plan(plan, factory, axiom, bounds);
  const std::size_t total = plan.instances.size();
  std::vector<Outcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_bad{total};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total || k > first_bad.load()) return;
      try {
        outcomes[k] = evaluate(plan.instances[k], axiom, bounds);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        first_bad.store(0);
        return;
      }
      if (outcomes[k].verdict == Verdict::violation) {
        std::size_t seen = first_bad.load();
        while (k < seen && !first_bad.compare_exchange_weak(seen, k)) {
        }
      }
    }
  };

  const unsigned workers = std::max(1u, bounds.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t stop = std::min(first_bad.load(), total);
  for (std::size_t k = 0; k < total && k <= stop; ++k) {
    ++report.checked;
    switch (outcomes[k].verdict) {
      case Verdict::pass: ++report.passed; break;
      case Verdict::vacuous: ++report.vacuous; break;
      case Verdict::undetermined: ++report.undetermined; break;
      case Verdict::violation: report.first_violation = std::move(outcomes[k].violation); break;
    }
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

CampaignReport falsify(const RuleFn& f, Axiom axiom, SearchBounds bounds) {
  bounds.m_min = f.m;
  bounds.m_max = f.m;
  return falsify([&f](int) { return f; }, axiom, bounds);
}

Alternative endpoint_median_oracle(const Profile& p) {
  std::vector<int> endpoints;
  endpoints.reserve(2 * p.size());
  for (const auto& b : p.ballots()) {
    endpoints.push_back(b.interval.left);
    endpoints.push_back(b.interval.right);
  }
  const auto nth = endpoints.begin() + static_cast<std::ptrdiff_t>(p.size() - 1);
  std::nth_element(endpoints.begin(), nth, endpoints.end());
  return Alternative{*nth};
}

// ---------------------------------------------------------------------------------------------
// Uniqueness witnesses

std::string_view to_string(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::theta_low: return "theta-below-half";
    case DeviationKind::theta_high: return "theta-above-half";
    case DeviationKind::alpha_low: return "alpha-below-half";
    case DeviationKind::alpha_high: return "alpha-above-half";
  }
  return "unknown";
}

namespace {

Violation confirmed(const CheckResult& r, const char* what) {
  if (r.verdict != Verdict::violation || !r.violation) {
    throw Error(ErrorKind::internal, std::string("constructed ") + what + " witness was not confirmed");
  }
  return *r.violation;
}

// Smallest n (then w1) with lo < w1/n < hi.
std::pair<std::int64_t, std::int64_t> smallest_fraction_between(const Rational& lo, const Rational& hi) {
  for (std::int64_t n = 2;; ++n) {
    const std::int64_t w1 = (lo * Rational(n)).floor() + 1;
    if (w1 >= 1 && w1 < n && Rational(w1, n) < hi) return {w1, n - w1};
    if (n > 1'000'000) throw Error(ErrorKind::no_witness, "no small fraction in the required range");
  }
}

}  // namespace

UniquenessWitness uniqueness_witness(const PositionThresholdRule& rule) {
  const int m = rule.m();
  const Rational half(1, 2);
  const RuleFn f = axioms::to_rule_fn(rule);

  for (int i = 1; i < m; ++i) {
    const Rational& th = rule.theta()[i];
    if (th == half) continue;
    const bool low = th < half;
    const auto [w1, w2] = low ? smallest_fraction_between(th, half) : smallest_fraction_between(half, th);
    std::vector<Interval> ivs(static_cast<std::size_t>(w1), Interval::singleton(i));
    ivs.insert(ivs.end(), static_cast<std::size_t>(w2), Interval::singleton(m));
    const auto p = Profile::from_intervals(m, ivs);
    return UniquenessWitness{low ? DeviationKind::theta_low : DeviationKind::theta_high, i, w1, w2, 0,
                           confirmed(axioms::check_majority_criterion(f, p), "majority")};
  }

  for (int i = 1; i < m; ++i) {
    const Rational& a = rule.alpha()[i];
    if (a == half) continue;
    const bool low = a < half;
    // Smallest t with t·(1/2 − α_i) > 1, or t·(α_i − 1/2) > 1/2.
    const std::int64_t t = low ? (Rational(1) / (half - a)).floor() + 1 : (half / (a - half)).floor() + 1;
    std::vector<Interval> ivs(static_cast<std::size_t>(t), Interval{i, i + 1});
    ivs.push_back(Interval::singleton(low ? i : i + 1));
    const auto p = Profile::from_intervals(m, ivs);
    return UniquenessWitness{low ? DeviationKind::alpha_low : DeviationKind::alpha_high, i, 0, 0, t,
                           confirmed(axioms::check_strong_unanimity(f, p), "strong-unanimity")};
  }
  throw Error(ErrorKind::no_witness, "the rule is the endpoint-median rule");
}

// ---------------------------------------------------------------------------------------------
// Fixtures

const std::vector<std::string>& fixture_tags() {
  static const std::vector<std::string> tags = {"constant", "strict-threshold", "log-parity-endpoint",
                                                "even-voter-doubled", "profile-dependent-alpha"};
  return tags;
}

Rational profile_dependent_alpha1(const AnonProfile& p) {
  std::int64_t missing = 0;
  std::size_t idx = 0;
  for (int l = 1; l <= p.m(); ++l) {
    for (int r = l; r <= p.m(); ++r, ++idx) {
      if (l > 1) missing += p.counts()[idx];
    }
  }
  return Rational(1, 2) - Rational(missing, 2 * p.voters());
}

namespace {

bool numeric_even(const VoterId& id) {
  if (id.empty()) return false;
  char* end = nullptr;
  const long long v = std::strtoll(id.c_str(), &end, 10);
  return end != id.c_str() && *end == '\0' && v % 2 == 0;
}

int ceil_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

// For q(λ) = Aλ² + Bλ + C given by q(0), q(1), q(2): a λ₀ ≥ 1 beyond which q has constant sign.
std::int64_t polynomial_sign_bound(const Rational& q0, const Rational& q1, const Rational& q2) {
  const Rational a = (q2 - Rational(2) * q1 + q0) / Rational(2);
  const Rational b = q1 - q0 - a;
  const Rational& c = q0;
  if (a.sign() != 0) return (Rational(1) + max(abs(b), abs(c)) / abs(a)).floor() + 1;
  if (b.sign() != 0) return (abs(c) / abs(b)).floor() + 1;
  return 1;
}

RuleFn make_fn(int m, std::string name, std::function<Alternative(const AnonProfile&)> anon) {
  RuleFn f;
  f.m = m;
  f.name = std::move(name);
  f.eval = [anon](const Profile& p) { return anon(anonymize(p)); };
  f.eval_anon = std::move(anon);
  return f;
}

}  // namespace

RuleFn fixture(const std::string& tag, const std::string& params, int m, const PositionThresholdRule* base) {
  validate_alternative_count(m);
  if (tag != "constant" && !params.empty()) {
    throw Error(ErrorKind::unknown_fixture, "fixture " + tag + " takes no parameters");
  }

  if (tag == "constant") {
    int j = 1;
    if (!params.empty()) {
      std::size_t used = 0;
      try {
        j = std::stoi(params, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != params.size()) throw Error(ErrorKind::unknown_fixture, "constant:" + params + " is not an index");
    }
    validate_alternative(m, j);
    RuleFn f = make_fn(m, "constant:" + std::to_string(j), [j](const AnonProfile&) { return Alternative{j}; });
    f.stable_lambda = [](const Profile&, const Profile&) { return std::int64_t{1}; };
    return f;
  }

  if (tag == "strict-threshold") {
    const PositionThresholdRule rule = base != nullptr ? *base : endpoint_median_rule(m);
    if (rule.m() != m) throw Error(ErrorKind::invalid_instance, "base rule has a different m");
    RuleFn f = make_fn(m, tag, [rule](const AnonProfile& p) {
      const auto bars = rule.scaled_thresholds(p.voters());
      for (int i = 1; i < rule.m(); ++i) {
        if (collective_position(rule.alpha(), p, Alternative{i}) > bars[static_cast<std::size_t>(i - 1)]) {
          return Alternative{i};
        }
      }
      return Alternative{rule.m()};
    });
    f.stable_lambda = [rule](const Profile& p1, const Profile& p2) {
      return axioms::threshold_stable_lambda(rule.alpha(), rule.theta(), p1, p2);
    };
    return f;
  }

  if (tag == "log-parity-endpoint") {
    const auto half = ThresholdVector::constant(m, Rational(1, 2));
    const PositionThresholdRule left_median(half, WeightVector::constant(m, Rational(1)));
    const PositionThresholdRule right_median(half, WeightVector::constant(m, Rational(0)));
    return make_fn(m, tag, [left_median, right_median](const AnonProfile& p) {
      return ceil_log2(p.voters()) % 2 == 1 ? left_median.winner(p) : right_median.winner(p);
    });
  }

  if (tag == "even-voter-doubled") {
    const PositionThresholdRule em = endpoint_median_rule(m);
    RuleFn f;
    f.m = m;
    f.name = tag;
    f.eval = [em, m](const Profile& p) {
      std::vector<std::int64_t> counts(interval_count(m), 0);
      for (const auto& b : p.ballots()) {
        counts[canonical_index(m, b.interval)] += numeric_even(b.voter) ? 2 : 1;
      }
      return em.winner(AnonProfile(m, std::move(counts)));
    };
    return f;
  }

  if (tag == "profile-dependent-alpha") {
    const auto half = ThresholdVector::constant(m, Rational(1, 2));
    RuleFn f = make_fn(m, tag, [half, m](const AnonProfile& p) {
      std::vector<Rational> alpha(static_cast<std::size_t>(m), Rational(1));
      alpha[0] = profile_dependent_alpha1(p);
      return PositionThresholdRule::unchecked(half, WeightVector(std::move(alpha))).winner(p);
    });
    f.stable_lambda = [m](const Profile& p1, const Profile& p2) {
      const AnonProfile a1 = anonymize(p1);
      const AnonProfile a2 = anonymize(p2);
      const std::array<AnonProfile, 3> at = {a2, a1 + a2, a1.scaled(2) + a2};
      const auto ones = WeightVector::constant(m, Rational(1));
      std::int64_t bound = 1;
      for (int i = 1; i < m; ++i) {
        std::array<Rational, 3> gap{};
        for (std::size_t k = 0; k < 3; ++k) {
          const Rational n(at[k].voters());
          if (i == 1) {
            // 2n·(Π(x_1) − n/2) is a polynomial of degree ≤ 2 in λ.
            const Rational straddle = collective_position(ones, at[k], Alternative{1}) - Rational(at[k].counts()[0]);
            const Rational pi = Rational(at[k].counts()[0]) + straddle * profile_dependent_alpha1(at[k]);
            gap[k] = Rational(2) * n * (pi - n / Rational(2));
          } else {
            gap[k] = collective_position(ones, at[k], Alternative{i}) - n / Rational(2);
          }
        }
        bound = std::max(bound, polynomial_sign_bound(gap[0], gap[1], gap[2]));
      }
      return bound;
    };
    return f;
  }

  throw Error(ErrorKind::unknown_fixture, "unknown fixture \"" + tag + "\"");
}

FixedRuleChain fixed_rule_chain() {
  constexpr int m = 2;
  const Interval x1 = Interval::singleton(1);
  const Interval x2 = Interval::singleton(2);
  const Interval both{1, 2};
  const std::array<Profile, 3> profiles = {
      Profile::from_intervals(m, {x1, x1, x2, x2}),
      Profile::from_intervals(m, {both, both, both, both}),
      Profile::from_intervals(m, {both, both, x1, x2}),
  };
  const RuleFn f = fixture("profile-dependent-alpha", "", m);

  FixedRuleChain chain{profiles, {}, {}, {}, true};
  // For a fixed rule (θ_1, α_1) = (φ, β), Π(x_1) = a + b·β with a voters on {x_1}, b on [x_1, x_2].
  std::array<Rational, 3> a{};
  std::array<Rational, 3> b{};
  std::array<Rational, 3> n{};
  for (std::size_t k = 0; k < 3; ++k) {
    chain.winners[k] = f(profiles[k]);
    chain.alpha1[k] = profile_dependent_alpha1(anonymize(profiles[k]));
    for (const auto& ballot : profiles[k].ballots()) {
      if (ballot.interval == x1) a[k] += Rational(1);
      if (ballot.interval == both) b[k] += Rational(1);
    }
    n[k] = Rational(static_cast<std::int64_t>(profiles[k].size()));
    std::ostringstream os;
    os << "profile " << (k + 1) << ": alpha_1 = " << chain.alpha1[k] << ", winner x_" << chain.winners[k].index
       << ", so a fixed rule needs " << a[k] << " + " << b[k] << "*alpha_1 " << (chain.winners[k].index == 1 ? ">=" : "<")
       << " " << n[k] << "*theta_1";
    chain.steps.push_back(os.str());
  }

  // The closing argument needs the shape (x_1 with b = 0, x_1 with a = 0, x_2).
  const bool shape = chain.winners[0].index == 1 && chain.winners[1].index == 1 && chain.winners[2].index == 2 &&
                     b[0].sign() == 0 && a[1].sign() == 0 && b[1].sign() > 0;
  if (!shape) {
    chain.steps.push_back("winners do not have the contradictory shape");
    return chain;
  }
  const Rational phi_max = a[0] / n[0];  // θ_1 ≤ phi_max
  const Rational ratio = n[1] / b[1];    // α_1 ≥ ratio·θ_1
  // Π_3 ≥ a_3 + b_3·ratio·θ_1, so Π_3 − n_3·θ_1 ≥ a_3 + (b_3·ratio − n_3)·θ_1, linear in θ_1 ∈ (0, phi_max].
  const Rational slope = b[2] * ratio - n[2];
  const Rational at_zero = a[2];
  const Rational at_max = a[2] + slope * phi_max;
  std::ostringstream os;
  os << "theta_1 <= " << phi_max << " and alpha_1 >= " << ratio << "*theta_1 give Pi_3 - " << n[2]
     << "*theta_1 >= " << at_zero << " + " << slope << "*theta_1, which is " << at_zero << " at theta_1 = 0 and "
     << at_max << " at theta_1 = " << phi_max;
  chain.steps.push_back(os.str());
  if (at_zero.sign() >= 0 && at_max.sign() >= 0) {
    chain.fixed_rule_possible = false;
    chain.steps.push_back("so every fixed rule elects x_1 on profile 3, contradicting x_2");
  } else {
    chain.steps.push_back("the bound does not close; a fixed rule may exist");
  }
  return chain;
}

}  // namespace ivote::search
