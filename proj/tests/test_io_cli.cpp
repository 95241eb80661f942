#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ivote/cli.hpp"
#include "ivote/error.hpp"
#include "ivote/io.hpp"
#include "ivote/search.hpp"

using namespace ivote;
using io::Json;

namespace {

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return io::parse_json(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ivote");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ivote_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Io, ProfileRoundTrip) {
  const Profile p = io::profile_from_json(io::read_json_file(data("sample_profile.json")));
  EXPECT_EQ(p, Profile::from_intervals(4, {{1, 2}, {1, 3}, {2, 4}}));
  EXPECT_EQ(io::profile_from_json(io::to_json(p)), p);
  const Profile numeric = io::profile_from_json(io::parse_json(R"({"m":3,"voters":[{"id":7,"interval":[2,3]}]})"));
  EXPECT_TRUE(numeric.has_voter("7"));
}

TEST(Io, ProfileErrorsCarryLocation) {
  try {
    io::profile_from_json(io::parse_json(R"({"m":3,"voters":[{"id":"1","interval":[3,2]}]})"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_interval);
    EXPECT_NE(std::string(e.what()).find("/voters/0"), std::string::npos) << e.what();
  }
  try {
    io::parse_json("{\"m\": 3,,}");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
}

TEST(Io, RuleRoundTripAndUnchecked) {
  const auto rule = io::rule_from_json(io::read_json_file(data("left_weights_rule.json")));
  EXPECT_EQ(rule.alpha(), WeightVector::constant(4, 1));
  const auto back = io::rule_from_json(io::to_json(rule));
  EXPECT_EQ(back.theta(), rule.theta());
  EXPECT_EQ(back.alpha(), rule.alpha());

  const Json bad = io::read_json_file(data("incompatible_rule.json"));
  EXPECT_FALSE(io::rule_from_json(bad).compatible());
  Json strict = bad;
  strict.erase("unchecked");
  EXPECT_THROW(io::rule_from_json(strict), Error);
  EXPECT_FALSE(io::rule_from_json(strict, true).compatible());
  EXPECT_EQ(io::to_json(io::rule_from_json(bad)).value("unchecked", false), true);
}

TEST(Io, Rationals) {
  EXPECT_EQ(io::rational_from_json(Json("3/6"), "/x"), Rational(1, 2));
  EXPECT_EQ(io::rational_from_json(Json(1), "/x"), Rational(1));
  EXPECT_EQ(io::to_json(Rational(2, 4)), Json("1/2"));
  EXPECT_THROW(io::rational_from_json(Json(0.5), "/x"), Error);
  EXPECT_THROW(io::rule_from_json(io::read_json_file(data("bad_rational_rule.json"))), Error);
}

TEST(Io, ViolationRoundTrip) {
  const auto f = search::fixture("even-voter-doubled", "", 2);
  const auto r = axioms::check_anonymity(f, Profile::from_intervals(2, {{1, 1}, {2, 2}}), {{"1", "2"}, {"2", "1"}});
  ASSERT_TRUE(r.violation);
  const auto v = io::violation_from_json(io::parse_json(io::render(io::to_json(*r.violation), false)));
  EXPECT_EQ(io::to_json(v), io::to_json(*r.violation));
  EXPECT_TRUE(axioms::replay(f, v));
}

TEST(Cli, WinnerSampleProfile) {
  const auto left = run({"winner", "--rule", data("left_weights_rule.json"), "--profile", data("sample_profile.json")});
  EXPECT_EQ(left.code, 0);
  EXPECT_EQ(left.json()["winner"], 1);
  EXPECT_EQ(left.json()["positions"][0], "2");

  const auto em = run({"winner", "--rule", data("endpoint_median_rule.json"), "--profile", data("sample_profile.json")});
  EXPECT_EQ(em.code, 0);
  EXPECT_EQ(em.json()["winner"], 2);
  EXPECT_EQ(em.json()["positions"], Json::parse(R"(["1","2","5/2","3"])"));
  EXPECT_EQ(em.json()["thresholds_scaled"][0], "3/2");
}

TEST(Cli, BadInputExitCodes) {
  const auto rational = run({"winner", "--rule", data("bad_rational_rule.json"), "--profile", data("sample_profile.json")});
  EXPECT_EQ(rational.code, cli::bad_input);
  EXPECT_NE(rational.err.find("error:"), std::string::npos);

  const auto incompatible =
      run({"winner", "--rule", data("incompatible_rule.json"), "--profile", data("sample_profile.json")});
  EXPECT_EQ(incompatible.code, 0);  // the file marks itself unchecked

  const std::string strict = temp_file("strict_rule.json", R"({"m":4,"theta":["1/2","1/2","1/2","1/2"],"alpha":[1,0,0,0]})");
  EXPECT_EQ(run({"winner", "--rule", strict, "--profile", data("sample_profile.json")}).code, cli::incompatible);
  EXPECT_EQ(run({"winner", "--rule", strict, "--profile", data("sample_profile.json"), "--unchecked"}).code, 0);

  EXPECT_EQ(run({"winner", "--rule", data("missing.json"), "--profile", data("sample_profile.json")}).code,
            cli::bad_input);
  EXPECT_NE(run({"audit", "--rule", data("endpoint_median_rule.json"), "--axiom", "fairness"}).code, 0);
}

TEST(Cli, Compat) {
  EXPECT_EQ(run({"compat", "--rule", data("endpoint_median_rule.json")}).code, 0);
  const auto bad = run({"compat", "--rule", data("incompatible_rule.json")});
  EXPECT_EQ(bad.code, cli::incompatible);
  EXPECT_EQ(bad.json()["first_violation"], 1);
}

TEST(Cli, AuditExitCodes) {
  const auto clean =
      run({"audit", "--rule", data("endpoint_median_rule.json"), "--axiom", "robustness", "--m", "4", "--n-max", "4"});
  EXPECT_EQ(clean.code, 0);
  EXPECT_EQ(clean.json()["first_violation"], nullptr);

  const auto parity = run({"audit", "--fixture", "log-parity-endpoint", "--axiom", "reinforcement", "--m", "2",
                           "--n-max", "2"});
  EXPECT_EQ(parity.code, cli::violation);
  EXPECT_TRUE(parity.json().contains("first_violation"));

  const std::string budget_env = "INTERVAL_VOTE_BUDGET";
  setenv(budget_env.c_str(), "5", 1);
  const auto over = run({"audit", "--fixture", "endpoint-median", "--axiom", "robustness", "--m", "3", "--n-max", "3"});
  unsetenv(budget_env.c_str());
  EXPECT_EQ(over.code, cli::budget_exceeded);
}

TEST(Cli, WitnessReplays) {
  const auto w = run({"witness", "--rule", data("incompatible_rule.json"), "--kind", "compat"});
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(w.json()["kind"], "compat");
  const std::string path = temp_file("compat_witness.json", w.out);
  const auto replayed = run({"audit", "--rule", data("incompatible_rule.json"), "--replay", path});
  EXPECT_EQ(replayed.code, cli::violation);

  const auto t2 = run({"witness", "--rule", data("third_thresholds_rule.json"), "--kind", "uniqueness"});
  ASSERT_EQ(t2.code, 0);
  EXPECT_EQ(t2.json()["violation"]["axiom"], "majority");
  const std::string t2_path = temp_file("t2_witness.json", t2.out);
  EXPECT_EQ(run({"audit", "--rule", data("third_thresholds_rule.json"), "--replay", t2_path}).code, cli::violation);

  const auto none = run({"witness", "--rule", data("endpoint_median_rule.json"), "--kind", "uniqueness"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "none\n");
}

TEST(Cli, FalsifyWitnessReplays) {
  const auto f = run({"falsify", "--fixture", "even-voter-doubled", "--axiom", "anonymity", "--m-max", "2",
                      "--n-max", "2"});
  EXPECT_EQ(f.code, cli::violation);
}

TEST(Cli, OracleMedian) {
  const auto r = run({"oracle-median", "--profile", data("sample_profile.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["oracle"], 2);
  EXPECT_EQ(r.json()["agree"], true);
  const std::string single = temp_file("single.json", R"({"m":4,"voters":[{"id":"a","interval":[3,3]}]})");
  EXPECT_EQ(run({"oracle-median", "--profile", single}).json()["endpoint_median"], 3);
}

TEST(Cli, OracleMedianScripted) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Profile p = search::random_profile(2 + static_cast<int>(seed % 6), 1 + static_cast<int>(seed % 11), seed);
    const std::string path = temp_file("scripted.json", io::render(io::to_json(p), false));
    const auto r = run({"oracle-median", "--profile", path});
    ASSERT_EQ(r.code, 0) << r.out;
  }
}

TEST(Cli, EnumerateAndDecompose) {
  EXPECT_EQ(run({"enumerate", "--m", "4", "--n", "3"}).json()["count"], 220);
  const auto d = run({"decompose", "--rule", data("endpoint_median_rule.json"), "--profile", data("sample_profile.json")});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.json()["agree"], true);
}

TEST(Cli, OutputIsByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"winner", "--rule", data("endpoint_median_rule.json"), "--profile", data("sample_profile.json")},
      {"falsify", "--fixture", "strict-threshold", "--m-max", "3", "--n-max", "3"},
      {"--pretty", "audit", "--fixture", "profile-dependent-alpha", "--axiom", "continuity", "--m", "2", "--n-max", "3"},
  };
  for (const auto& cmd : commands) {
    const auto first = run(cmd);
    for (const char* workers : {"1", "4"}) {
      auto again = cmd;
      if (cmd[0] == "falsify" || cmd[1] == "audit") {
        again.push_back("--workers");
        again.push_back(workers);
      }
      const auto r = run(again);
      EXPECT_EQ(r.code, first.code);
      EXPECT_EQ(r.out, first.out);
    }
  }
}
