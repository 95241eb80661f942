#include "ivote/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "ivote/axioms.hpp"
#include "ivote/error.hpp"
#include "ivote/io.hpp"
#include "ivote/search.hpp"
#include "ivote/witness.hpp"

namespace ivote::cli {

namespace {

using io::Json;

// --rule FILE or --fixture TAG[:params]. "endpoint-median" is accepted as a fixture name too.
struct RuleOptions {
  std::string rule_file;
  std::string fixture_spec;
  bool unchecked = false;
};

struct RuleSource {
  std::optional<PositionThresholdRule> ptr;
  std::string tag;
  std::string params;

  std::optional<int> fixed_m() const {
    return ptr && tag.empty() ? std::optional<int>(ptr->m()) : std::nullopt;
  }

  axioms::RuleFn at(int m) const {
    if (tag.empty()) {
      if (ptr->m() != m) throw Error(ErrorKind::invalid_instance, "rule file is for m=" + std::to_string(ptr->m()));
      return axioms::to_rule_fn(*ptr, ptr->compatible() ? "ptr" : "threshold-unchecked");
    }
    if (tag == "endpoint-median") return axioms::to_rule_fn(endpoint_median_rule(m), "endpoint-median");
    return search::fixture(tag, params, m, ptr ? &*ptr : nullptr);
  }
};

void add_rule_options(CLI::App* cmd, RuleOptions& opts, bool allow_fixture = true) {
  auto* rule = cmd->add_option("--rule", opts.rule_file, "Rule JSON file");
  if (allow_fixture) {
    cmd->add_option("--fixture", opts.fixture_spec, "Fixture rule TAG[:params]");
  } else {
    rule->required();
  }
  cmd->add_flag("--unchecked", opts.unchecked, "Accept weights and thresholds that are not compatible");
}

RuleSource load_rule(const RuleOptions& opts) {
  if (opts.rule_file.empty() && opts.fixture_spec.empty()) {
    throw CLI::RequiredError("--rule or --fixture");
  }
  RuleSource src;
  if (!opts.rule_file.empty()) src.ptr = io::rule_from_json(io::read_json_file(opts.rule_file), opts.unchecked);
  if (!opts.fixture_spec.empty()) {
    const auto colon = opts.fixture_spec.find(':');
    src.tag = opts.fixture_spec.substr(0, colon);
    if (colon != std::string::npos) src.params = opts.fixture_spec.substr(colon + 1);
    const auto& tags = search::fixture_tags();
    if (src.tag != "endpoint-median" && std::find(tags.begin(), tags.end(), src.tag) == tags.end()) {
      throw Error(ErrorKind::unknown_fixture, "unknown fixture \"" + src.tag + "\"");
    }
    if (src.ptr && src.tag != "strict-threshold") {
      throw CLI::ValidationError("--rule", "only the strict-threshold fixture takes --rule");
    }
  }
  return src;
}

Json rational_array(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(io::to_json(x));
  return out;
}

int report_exit(const search::CampaignReport& r) {
  if (r.budget_exceeded) return budget_exceeded;
  if (r.first_violation) return violation;
  if (r.undetermined > 0) return undetermined;
  return ok;
}

const std::vector<std::string>& axiom_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> out;
    for (auto a : axioms::all_axioms()) out.emplace_back(axioms::to_string(a));
    return out;
  }();
  return tags;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact voting on the interval domain", "ivote"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented JSON output");

  // winner
  RuleOptions winner_rule;
  std::string winner_profile;
  auto* winner = app.add_subcommand("winner", "Winner with collective positions and scaled thresholds");
  add_rule_options(winner, winner_rule);
  winner->add_option("--profile", winner_profile, "Profile JSON file")->required();

  // compat
  std::string compat_file;
  auto* compat = app.add_subcommand("compat", "Check whether weights and thresholds are compatible");
  compat->add_option("--rule", compat_file, "Rule JSON file")->required();

  // decompose
  RuleOptions decompose_rule;
  std::string decompose_profile;
  auto* decompose = app.add_subcommand("decompose", "Split every interval into weighted singleton ballots");
  add_rule_options(decompose, decompose_rule, false);
  decompose->add_option("--profile", decompose_profile, "Profile JSON file")->required();

  // audit / falsify
  RuleOptions audit_rule;
  std::string audit_axiom;
  std::string replay_file;
  int audit_m = 0;
  int audit_n_max = 3;
  int audit_pair_n_max = 0;
  std::int64_t audit_lambda = 1000;
  unsigned audit_workers = 1;
  bool audit_timing = false;
  auto* audit = app.add_subcommand("audit", "Exhaustive axiom audit for one m, or replay a stored witness");
  add_rule_options(audit, audit_rule);
  audit->add_option("--axiom", audit_axiom, "Axiom tag")->check(CLI::IsMember(axiom_tags()));
  audit->add_option("--m", audit_m, "Number of alternatives")->check(CLI::Range(2, 64));
  audit->add_option("--n-max", audit_n_max, "Largest electorate")->check(CLI::Range(1, 1000));
  audit->add_option("--pair-n-max", audit_pair_n_max, "Largest n1 + n2 for pair axioms (default: max(2, n-max))");
  audit->add_option("--lambda-max", audit_lambda, "Largest replication factor for continuity")
      ->check(CLI::PositiveNumber);
  audit->add_option("--workers", audit_workers, "Worker threads");
  audit->add_flag("--timing", audit_timing, "Include elapsed seconds (output is then not reproducible)");
  audit->add_option("--replay", replay_file, "Violation or witness JSON to re-check");

  RuleOptions falsify_rule;
  std::vector<std::string> falsify_axioms;
  search::SearchBounds fb;
  bool falsify_timing = false;
  auto* falsify = app.add_subcommand("falsify", "Search every axiom (or the given ones) for a counterexample");
  add_rule_options(falsify, falsify_rule);
  falsify->add_option("--axiom", falsify_axioms, "Axiom tags (default: all)")->check(CLI::IsMember(axiom_tags()));
  falsify->add_option("--m-min", fb.m_min, "Smallest m")->check(CLI::Range(2, 64));
  falsify->add_option("--m-max", fb.m_max, "Largest m")->check(CLI::Range(2, 64));
  falsify->add_option("--n-max", fb.n_max, "Largest electorate")->check(CLI::Range(1, 1000));
  falsify->add_option("--pair-n-max", fb.pair_n_max, "Largest n1 + n2 for pair axioms")->check(CLI::Range(2, 1000));
  falsify->add_option("--lambda-max", fb.lambda_max, "Largest replication factor")->check(CLI::PositiveNumber);
  falsify->add_option("--random-samples", fb.random_samples, "Extra random profiles per m");
  falsify->add_option("--random-n-max", fb.random_n_max, "Largest electorate of the random profiles");
  falsify->add_option("--seed", fb.seed, "Seed for random profiles");
  falsify->add_option("--workers", fb.workers, "Worker threads");
  falsify->add_flag("--timing", falsify_timing, "Include elapsed seconds");

  // witness
  std::string witness_file;
  std::string witness_kind;
  auto* witness = app.add_subcommand("witness", "Counterexample construction for a threshold rule");
  witness->add_option("--rule", witness_file, "Rule JSON file (need not be compatible)")->required();
  witness->add_option("--kind", witness_kind, "compat or uniqueness")
      ->required()
      ->check(CLI::IsMember({"compat", "uniqueness"}));

  // oracle-median
  std::string oracle_profile;
  auto* oracle = app.add_subcommand("oracle-median", "Cross-check the endpoint-median rule against the endpoint median");
  oracle->add_option("--profile", oracle_profile, "Profile JSON file")->required();

  // enumerate
  int enum_m = 2;
  int enum_n = 1;
  bool enum_list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count (or list) anonymous profiles");
  enumerate->add_option("--m", enum_m, "Number of alternatives")->required()->check(CLI::Range(2, 64));
  enumerate->add_option("--n", enum_n, "Number of voters")->required()->check(CLI::Range(1, 100000));
  enumerate->add_flag("--list", enum_list, "Print every count vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto emit = [&](const Json& j) { out << io::render(j, pretty); };

  try {
    if (*winner) {
      const RuleSource src = load_rule(winner_rule);
      const Profile p = io::profile_from_json(io::read_json_file(winner_profile));
      if (src.tag.empty()) {
        const auto& rule = *src.ptr;
        if (rule.m() != p.m()) throw Error(ErrorKind::incompatible_profiles, "rule and profile differ in m");
        const auto a = anonymize(p);
        emit(Json{{"winner", rule.winner(a).index},
                  {"positions", rational_array(collective_positions(rule.alpha(), a))},
                  {"thresholds_scaled", rational_array(rule.scaled_thresholds(a.voters()))}});
      } else {
        const auto f = src.at(p.m());
        emit(Json{{"rule", f.name}, {"winner", f(p).index}});
      }
      return ok;
    }

    if (*compat) {
      const auto rule = io::rule_from_json(io::read_json_file(compat_file), true);
      const auto report = check_compatible(rule.alpha(), rule.theta());
      emit(Json{{"compatible", report.compatible},
                {"first_violation", report.first_violation ? Json(*report.first_violation) : Json(nullptr)},
                {"monotone_alpha", rule.alpha().is_monotone()},
                {"weakly_efficient_thresholds", is_weakly_efficient_thresholds(rule.theta())}});
      return report.compatible ? ok : incompatible;
    }

    if (*decompose) {
      const RuleSource src = load_rule(decompose_rule);
      const auto& rule = *src.ptr;
      const Profile p = io::profile_from_json(io::read_json_file(decompose_profile));
      if (rule.m() != p.m()) throw Error(ErrorKind::incompatible_profiles, "rule and profile differ in m");
      Json voters = Json::array();
      for (const auto& b : p.ballots()) {
        Json pieces = Json::array();
        for (const auto& piece : decompose_interval(rule.alpha(), b.interval)) {
          pieces.push_back(Json{{"alternative", piece.alternative.index}, {"weight", io::to_json(piece.weight)}});
        }
        voters.push_back(Json{{"id", b.voter}, {"interval", io::to_json(b.interval)}, {"ballots", pieces}});
      }
      std::vector<Rational> direct;
      std::vector<Rational> via;
      for (int k = 1; k <= p.m(); ++k) {
        direct.push_back(collective_position(rule.alpha(), p, Alternative{k}));
        via.push_back(collective_position_decomposed(rule.alpha(), p, Alternative{k}));
      }
      emit(Json{{"monotone_alpha", rule.alpha().is_monotone()},
                {"voters", voters},
                {"positions", rational_array(direct)},
                {"positions_decomposed", rational_array(via)},
                {"agree", direct == via}});
      return direct == via ? ok : violation;
    }

    if (*audit) {
      const RuleSource src = load_rule(audit_rule);
      if (!replay_file.empty()) {
        Json doc = io::read_json_file(replay_file);
        if (doc.contains("violation")) doc = doc["violation"];
        const auto v = io::violation_from_json(doc);
        const auto f = src.at(v.profile.m());
        const bool reproduced = axioms::replay(f, v);
        emit(Json{{"axiom", std::string(axioms::to_string(v.axiom))}, {"rule", f.name}, {"reproduced", reproduced}});
        return reproduced ? violation : ok;
      }
      if (audit_axiom.empty()) throw CLI::RequiredError("--axiom (or --replay)");
      search::SearchBounds b;
      const int m = audit_m != 0 ? audit_m : src.fixed_m().value_or(3);
      if (src.fixed_m() && *src.fixed_m() != m) {
        throw CLI::ValidationError("--m", "rule file is for m=" + std::to_string(*src.fixed_m()));
      }
      b.m_min = b.m_max = m;
      b.n_max = audit_n_max;
      b.pair_n_max = audit_pair_n_max != 0 ? audit_pair_n_max : std::max(2, audit_n_max);
      b.lambda_max = audit_lambda;
      b.workers = audit_workers;
      const auto report = search::falsify([&](int mm) { return src.at(mm); }, axioms::parse_axiom(audit_axiom), b);
      emit(io::to_json(report, audit_timing));
      return report_exit(report);
    }

    if (*falsify) {
      const RuleSource src = load_rule(falsify_rule);
      if (src.fixed_m()) fb.m_min = fb.m_max = *src.fixed_m();
      if (fb.m_max < fb.m_min) throw CLI::ValidationError("--m-max", "must be at least --m-min");
      std::vector<axioms::Axiom> which;
      if (falsify_axioms.empty()) {
        which = axioms::all_axioms();
        if (!src.at(fb.m_min).internals) {
          which.erase(std::remove(which.begin(), which.end(), axioms::Axiom::orientation_symmetry), which.end());
        }
      } else {
        for (const auto& tag : falsify_axioms) which.push_back(axioms::parse_axiom(tag));
      }
      Json reports = Json::array();
      std::vector<int> codes;
      for (auto axiom : which) {
        const auto report = search::falsify([&](int mm) { return src.at(mm); }, axiom, fb);
        reports.push_back(io::to_json(report, falsify_timing));
        codes.push_back(report_exit(report));
      }
      emit(reports);
      for (int code : {violation, budget_exceeded, undetermined}) {
        if (std::find(codes.begin(), codes.end(), code) != codes.end()) return code;
      }
      return ok;
    }

    if (*witness) {
      const auto rule = io::rule_from_json(io::read_json_file(witness_file), true);
      try {
        if (witness_kind == "compat") {
          emit(io::to_json(incompatibility_witness(rule.alpha(), rule.theta())));
        } else {
          emit(io::to_json(search::uniqueness_witness(rule)));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::no_witness) throw;
        out << "none\n";
      }
      return ok;
    }

    if (*oracle) {
      const Profile p = io::profile_from_json(io::read_json_file(oracle_profile));
      const int by_oracle = search::endpoint_median_oracle(p).index;
      const int by_rule = endpoint_median_rule(p.m()).winner(p).index;
      emit(Json{{"oracle", by_oracle}, {"endpoint_median", by_rule}, {"agree", by_oracle == by_rule}});
      return by_oracle == by_rule ? ok : violation;
    }

    if (*enumerate) {
      const std::uint64_t count = search::count_profiles(enum_m, enum_n);
      Json result{{"m", enum_m}, {"n", enum_n}, {"count", count}};
      if (enum_list) {
        Json list = Json::array();
        search::for_each_profile(enum_m, enum_n, [&](const AnonProfile& a) {
          list.push_back(a.counts());
          return true;
        });
        result["intervals"] = Json::array();
        for (const auto& iv : canonical_intervals(enum_m)) result["intervals"].push_back(io::to_json(iv));
        result["profiles"] = std::move(list);
      }
      emit(result);
      return ok;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::incompatible_rule: return incompatible;
      case ErrorKind::too_large: return budget_exceeded;
      default: return bad_input;
    }
  }
  return ok;
}

}  // namespace ivote::cli
