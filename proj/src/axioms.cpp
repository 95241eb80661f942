#include "ivote/axioms.hpp"

#include <algorithm>
#include <memory>

#include "ivote/error.hpp"

namespace ivote::axioms {

namespace {

std::string alt(Alternative a) { return "x_" + std::to_string(a.index); }
std::string alt(int k) { return "x_" + std::to_string(k); }

Violation make_violation(Axiom axiom, const Profile& p, Alternative observed, std::string required) {
  return Violation{.axiom = axiom,
                   .profile = p,
                   .other = std::nullopt,
                   .voter = std::nullopt,
                   .side = std::nullopt,
                   .report = std::nullopt,
                   .preference = std::nullopt,
                   .renaming = std::nullopt,
                   .lambda = std::nullopt,
                   .observed = observed,
                   .required = std::move(required)};
}

CheckResult pass() { return CheckResult{Verdict::pass, std::nullopt}; }
CheckResult vacuous() { return CheckResult{Verdict::vacuous, std::nullopt}; }
CheckResult fail(Violation v) { return CheckResult{Verdict::violation, std::move(v)}; }

Alternative eval_replicated(const RuleFn& f, const Profile& p1, std::int64_t lambda, const Profile& p2) {
  if (f.eval_anon) return f.eval_anon(anonymize(p1).scaled(lambda) + anonymize(p2));
  return f.eval(replicate_and_combine(p1, lambda, p2));
}

void require_disjoint(const Profile& p1, const Profile& p2) {
  if (p1.m() != p2.m()) throw Error(ErrorKind::invalid_instance, "profiles over different m");
  if (!disjoint(p1, p2)) throw Error(ErrorKind::invalid_instance, "profiles are not voter-disjoint");
}

}  // namespace

RuleFn to_rule_fn(const PositionThresholdRule& rule, std::string name) {
  RuleFn f;
  f.m = rule.m();
  f.name = name.empty() ? std::string(rule.compatible() ? "ptr" : "threshold-unchecked") : std::move(name);
  f.eval = [rule](const Profile& p) { return rule.winner(p); };
  f.eval_anon = [rule](const AnonProfile& p) { return rule.winner(p); };
  f.stable_lambda = [rule](const Profile& p1, const Profile& p2) {
    return threshold_stable_lambda(rule.alpha(), rule.theta(), p1, p2);
  };
  f.internals = std::make_shared<const PositionThresholdRule>(rule);
  return f;
}

std::int64_t threshold_stable_lambda(const WeightVector& alpha, const ThresholdVector& theta, const Profile& p1,
                                     const Profile& p2) {
  auto a1 = anonymize(p1);
  auto a2 = anonymize(p2);
  auto n1 = Rational(a1.voters());
  auto n2 = Rational(a2.voters());
  std::int64_t lambda0 = 1;
  for (int h = 1; h < alpha.m(); ++h) {
    Rational gap1 = collective_position(alpha, a1, Alternative{h}) - theta[h] * n1;
    Rational gap2 = collective_position(alpha, a2, Alternative{h}) - theta[h] * n2;
    if (gap1.sign() == 0) continue;
    lambda0 = std::max(lambda0, (abs(gap2) / abs(gap1)).floor() + 1);
  }
  return lambda0;
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::robustness: return "robustness";
    case Axiom::reinforcement: return "reinforcement";
    case Axiom::unanimity: return "unanimity";
    case Axiom::strong_unanimity: return "strong-unanimity";
    case Axiom::majority: return "majority";
    case Axiom::weak_efficiency: return "weak-efficiency";
    case Axiom::anonymity: return "anonymity";
    case Axiom::continuity: return "continuity";
    case Axiom::strategyproofness: return "strategyproofness";
    case Axiom::strong_uncompromisingness: return "strong-uncompromisingness";
    case Axiom::shift_symmetry: return "shift-symmetry";
    case Axiom::orientation_symmetry: return "orientation-symmetry";
  }
  return "unknown";
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> all = {
      Axiom::robustness,        Axiom::reinforcement,   Axiom::unanimity,
      Axiom::strong_unanimity,  Axiom::majority,        Axiom::weak_efficiency,
      Axiom::anonymity,         Axiom::continuity,      Axiom::strategyproofness,
      Axiom::strong_uncompromisingness, Axiom::shift_symmetry, Axiom::orientation_symmetry,
  };
  return all;
}

Axiom parse_axiom(std::string_view tag) {
  for (auto a : all_axioms()) {
    if (to_string(a) == tag) return a;
  }
  throw Error(ErrorKind::unsupported, "unknown axiom \"" + std::string(tag) + "\"");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::vacuous: return "vacuous";
    case Verdict::violation: return "violation";
    case Verdict::undetermined: return "undetermined";
  }
  return "unknown";
}

CheckResult check_robustness_at(const RuleFn& f, const Profile& p, const VoterId& voter, Side side) {
  const Interval iv = p.interval_of(voter);
  if (iv.is_singleton()) return vacuous();
  const Alternative before = f(p);
  const Profile shrunk = delete_endpoint(p, voter, side);
  const Alternative after = f(shrunk);
  if (before == after) return pass();
  const int removed = side == Side::left ? iv.left : iv.right;
  const int neighbour = side == Side::left ? iv.left + 1 : iv.right - 1;
  if (before.index == removed && after.index == neighbour) return pass();

  auto v = make_violation(Axiom::robustness, p, after,
                          "after removing " + alt(removed) + " from voter " + voter + " the winner must stay " +
                              alt(before) + (before.index == removed ? " or move to " + alt(neighbour) : ""));
  v.voter = voter;
  v.side = side;
  return fail(std::move(v));
}

std::vector<Violation> check_robustness(const RuleFn& f, const Profile& p) {
  std::vector<Violation> out;
  for (const auto& b : p.ballots()) {
    if (b.interval.is_singleton()) continue;
    for (Side side : {Side::left, Side::right}) {
      auto r = check_robustness_at(f, p, b.voter, side);
      if (r.violation) out.push_back(std::move(*r.violation));
    }
  }
  return out;
}

CheckResult check_reinforcement(const RuleFn& f, const Profile& p1, const Profile& p2) {
  require_disjoint(p1, p2);
  const Alternative w1 = f(p1);
  const Alternative w2 = f(p2);
  if (w1 != w2) return vacuous();
  const Alternative joint = f(combine(p1, p2));
  if (joint == w1) return pass();
  auto v = make_violation(Axiom::reinforcement, p1, joint,
                          "both parts elect " + alt(w1) + ", so the combined profile must too");
  v.other = p2;
  return fail(std::move(v));
}

CheckResult check_unanimity_profile(const RuleFn& f, const Profile& p) {
  const Interval first = p.ballots().front().interval;
  if (!first.is_singleton()) return vacuous();
  for (const auto& b : p.ballots()) {
    if (b.interval != first) return vacuous();
  }
  const Alternative w = f(p);
  if (w.index == first.left) return pass();
  return fail(make_violation(Axiom::unanimity, p, w, "every voter reports {" + alt(first.left) + "}"));
}

CheckResult check_unanimity(const RuleFn& f, int m, int j, int n_max) {
  validate_alternative(m, j);
  for (int n = 1; n <= n_max; ++n) {
    auto p = Profile::from_intervals(m, std::vector<Interval>(static_cast<std::size_t>(n), Interval::singleton(j)));
    auto r = check_unanimity_profile(f, p);
    if (!r.ok()) return r;
  }
  return pass();
}

CheckResult check_strong_unanimity(const RuleFn& f, const Profile& p) {
  int lo = 1;
  int hi = p.m();
  for (const auto& b : p.ballots()) {
    lo = std::max(lo, b.interval.left);
    hi = std::min(hi, b.interval.right);
  }
  if (lo > hi) return vacuous();
  const Alternative w = f(p);
  if (lo <= w.index && w.index <= hi) return pass();
  return fail(make_violation(Axiom::strong_unanimity, p, w,
                             "winner must lie in the common interval [" + alt(lo) + "," + alt(hi) + "]"));
}

CheckResult check_majority_criterion(const RuleFn& f, const Profile& p) {
  std::vector<std::int64_t> singles(static_cast<std::size_t>(p.m() + 1), 0);
  for (const auto& b : p.ballots()) {
    if (b.interval.is_singleton()) ++singles[static_cast<std::size_t>(b.interval.left)];
  }
  const auto n = static_cast<std::int64_t>(p.size());
  for (int j = 1; j <= p.m(); ++j) {
    if (2 * singles[static_cast<std::size_t>(j)] > n) {
      const Alternative w = f(p);
      if (w.index == j) return pass();
      return fail(make_violation(Axiom::majority, p, w,
                                 "a strict majority reports {" + alt(j) + "}, which must win"));
    }
  }
  return vacuous();
}

CheckResult check_weak_efficiency(const RuleFn& f, const Profile& p) {
  const Alternative w = f(p);
  for (const auto& b : p.ballots()) {
    if (b.interval.contains(w.index)) return pass();
  }
  return fail(make_violation(Axiom::weak_efficiency, p, w, "winner must be reported by at least one voter"));
}

CheckResult check_anonymity(const RuleFn& f, const Profile& p, const std::map<VoterId, VoterId>& renaming) {
  const Profile renamed = rename(p, renaming);
  const Alternative w = f(p);
  const Alternative w_renamed = f(renamed);
  if (w == w_renamed) return pass();
  auto v = make_violation(Axiom::anonymity, p, w_renamed, "renaming voters must keep the winner " + alt(w));
  v.renaming = renaming;
  return fail(std::move(v));
}

ContinuityResult check_right_biased_continuity(const RuleFn& f, const Profile& p1, const Profile& p2,
                                               std::int64_t lambda_max) {
  require_disjoint(p1, p2);
  if (lambda_max < 1) throw Error(ErrorKind::invalid_instance, "lambda_max must be at least 1");
  const Alternative w1 = f(p1);
  const Alternative w2 = f(p2);

  ContinuityResult result;
  result.which = weakly_left_of(w2, w1) ? ContinuityCase::same_or_right : ContinuityCase::left;
  int reach = 1;
  for (const auto& b : p1.ballots()) reach = std::max(reach, b.interval.right);

  // Case (ii) is existential in x_j and λ jointly; the widest admissible x_j is the right-most
  // alternative any p1 voter reports.
  auto satisfied = [&](Alternative w) {
    if (result.which == ContinuityCase::same_or_right) return w == w1;
    return w1.index <= w.index && w.index <= reach;
  };

  std::optional<std::int64_t> stable;
  if (f.stable_lambda) stable = f.stable_lambda(p1, p2);
  const std::int64_t scan_to = stable && *stable <= lambda_max ? *stable : lambda_max;

  Alternative last = w1;
  for (std::int64_t lambda = 1; lambda <= scan_to; ++lambda) {
    last = eval_replicated(f, p1, lambda, p2);
    if (satisfied(last)) {
      result.verdict = Verdict::pass;
      result.lambda = lambda;
      return result;
    }
  }

  std::int64_t examined = scan_to;
  if (stable && *stable > lambda_max) {
    last = eval_replicated(f, p1, *stable, p2);
    if (satisfied(last)) {
      result.verdict = Verdict::pass;
      result.lambda = *stable;
      result.analytic = true;
      return result;
    }
  }
  if (!stable || *stable > lambda_max) {
    result.verdict = Verdict::undetermined;
    return result;
  }

  result.verdict = Verdict::violation;
  result.analytic = true;
  std::string required =
      result.which == ContinuityCase::same_or_right
          ? "some λ must give f(λ·p1 + p2) = " + alt(w1) + " (f(p2) = " + alt(w2) + ")"
          : "some λ must give f(λ·p1 + p2) between " + alt(w1) + " and " + alt(reach) + " (f(p2) = " + alt(w2) + ")";
  auto v = make_violation(Axiom::continuity, p1, last, std::move(required));
  v.other = p2;
  v.lambda = examined;
  result.violation = std::move(v);
  return result;
}

std::vector<Violation> check_strategyproofness(const RuleFn& f, const Profile& p, const VoterId& voter, int guard) {
  const Interval truthful = p.interval_of(voter);
  const auto preferences = prefs::enumerate_wsp_with_plateau(p.m(), truthful, guard);
  const Alternative honest = f(p);
  std::vector<Violation> out;
  for (const auto& report : canonical_intervals(p.m())) {
    if (report == truthful) continue;
    const Alternative manipulated = f(with_interval(p, voter, report));
    for (const auto& pref : preferences) {
      if (!pref.strictly_prefers(manipulated.index, honest.index)) continue;
      auto v = make_violation(Axiom::strategyproofness, p, manipulated,
                              "voter " + voter + " must not gain: truthful winner " + alt(honest) + " under " +
                                  pref.str());
      v.voter = voter;
      v.report = report;
      v.preference = pref;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::optional<int> uncompromising_premise(Alternative w, Interval o, Interval n) {
  const int x = w.index;
  if (o.right < x && n.right <= x) return 1;
  if (x < o.left && x <= n.left) return 2;
  if (o.left < x && x < o.right && n.left <= x && x <= n.right) return 3;
  if (o.left == x && x < o.right && n.left == x && x <= n.right) return 4;
  if (o.left < x && x == o.right && n.left <= x && x == n.right) return 5;
  return std::nullopt;
}

CheckResult check_strong_uncompromisingness(const RuleFn& f, const Profile& p, const VoterId& voter,
                                            Interval new_interval) {
  Interval::make(p.m(), new_interval.left, new_interval.right);
  const Interval old_interval = p.interval_of(voter);
  const Alternative w = f(p);
  auto premise = uncompromising_premise(w, old_interval, new_interval);
  if (!premise) return vacuous();
  const Alternative after = f(with_interval(p, voter, new_interval));
  if (after == w) return pass();
  auto v = make_violation(Axiom::strong_uncompromisingness, p, after,
                          "premise (" + std::to_string(*premise) + ") holds, so the winner must stay " + alt(w));
  v.voter = voter;
  v.report = new_interval;
  return fail(std::move(v));
}

Profile shift_right(const Profile& p) {
  std::vector<Ballot> ballots = p.ballots();
  for (auto& b : ballots) {
    if (b.interval.right >= p.m()) throw Error(ErrorKind::invalid_instance, "interval cannot shift past x_m");
    ++b.interval.left;
    ++b.interval.right;
  }
  return Profile(p.m(), std::move(ballots));
}

Profile mirror(const Profile& p) {
  std::vector<Ballot> ballots = p.ballots();
  for (auto& b : ballots) b.interval = Interval{p.m() + 1 - b.interval.right, p.m() + 1 - b.interval.left};
  return Profile(p.m(), std::move(ballots));
}

CheckResult check_shift_symmetry(const RuleFn& f, const Profile& p) {
  for (const auto& b : p.ballots()) {
    if (b.interval.right >= p.m()) return vacuous();
  }
  const Alternative w = f(p);
  const Alternative shifted = f(shift_right(p));
  if (shifted.index == w.index + 1) return pass();
  return fail(make_violation(Axiom::shift_symmetry, p, shifted,
                             "shifted profile must elect " + alt(w.index + 1) + " (original winner " + alt(w) + ")"));
}

CheckResult check_orientation_symmetry(const PositionThresholdRule& rule, const Profile& p) {
  const auto a = anonymize(p);
  const auto bars = rule.scaled_thresholds(a.voters());
  for (int i = 1; i <= p.m(); ++i) {
    if (collective_position(rule.alpha(), a, Alternative{i}) == bars[static_cast<std::size_t>(i - 1)]) {
      return vacuous();
    }
  }
  const Alternative w = rule.winner(a);
  const Alternative mirrored = rule.winner(mirror(p));
  if (mirrored.index == p.m() + 1 - w.index) return pass();
  return fail(make_violation(Axiom::orientation_symmetry, p, mirrored,
                             "mirrored profile must elect " + alt(p.m() + 1 - w.index)));
}

bool replay(const RuleFn& f, const Violation& v, const PositionThresholdRule* ptr) {
  auto same = [&](const std::optional<Violation>& again) {
    return again.has_value() && again->observed == v.observed;
  };
  auto need = [&](bool present, const char* field) {
    if (!present) throw Error(ErrorKind::invalid_instance, std::string("witness lacks ") + field);
  };
  switch (v.axiom) {
    case Axiom::robustness:
      need(v.voter && v.side, "voter/side");
      return same(check_robustness_at(f, v.profile, *v.voter, *v.side).violation);
    case Axiom::reinforcement:
      need(v.other.has_value(), "second profile");
      return same(check_reinforcement(f, v.profile, *v.other).violation);
    case Axiom::unanimity:
      return same(check_unanimity_profile(f, v.profile).violation);
    case Axiom::strong_unanimity:
      return same(check_strong_unanimity(f, v.profile).violation);
    case Axiom::majority:
      return same(check_majority_criterion(f, v.profile).violation);
    case Axiom::weak_efficiency:
      return same(check_weak_efficiency(f, v.profile).violation);
    case Axiom::anonymity:
      need(v.renaming.has_value(), "renaming");
      return same(check_anonymity(f, v.profile, *v.renaming).violation);
    case Axiom::continuity:
      need(v.other && v.lambda, "second profile/lambda");
      return same(check_right_biased_continuity(f, v.profile, *v.other, *v.lambda).violation);
    case Axiom::strategyproofness: {
      need(v.voter && v.report && v.preference, "voter/report/preference");
      const Interval truthful = v.profile.interval_of(*v.voter);
      if (!prefs::is_weakly_single_peaked(*v.preference) || prefs::top_set(*v.preference) != truthful) return false;
      const Alternative honest = f(v.profile);
      const Alternative manipulated = f(with_interval(v.profile, *v.voter, *v.report));
      return manipulated == v.observed && v.preference->strictly_prefers(manipulated.index, honest.index);
    }
    case Axiom::strong_uncompromisingness:
      need(v.voter && v.report, "voter/report");
      return same(check_strong_uncompromisingness(f, v.profile, *v.voter, *v.report).violation);
    case Axiom::shift_symmetry:
      return same(check_shift_symmetry(f, v.profile).violation);
    case Axiom::orientation_symmetry:
      if (ptr == nullptr) ptr = f.internals.get();
      if (ptr == nullptr) throw Error(ErrorKind::unsupported, "orientation symmetry replay needs a threshold rule");
      return same(check_orientation_symmetry(*ptr, v.profile).violation);
  }
  return false;
}

}  // namespace ivote::axioms
