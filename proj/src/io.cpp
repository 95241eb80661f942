#include "ivote/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "ivote/error.hpp"

namespace ivote::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse_error, (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(where, "integer out of range");
  return static_cast<int>(v);
}

// Message of an Error without its "kind: " prefix.
std::string body(const Error& e) {
  const std::string text = e.what();
  const std::size_t skip = to_string(e.kind()).size() + 2;
  return text.size() >= skip ? text.substr(skip) : text;
}

// Re-tags errors raised while building values so callers see where they came from.
template <typename F>
auto located(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    const std::string inner = body(e);
    if (inner.rfind("/: ", 0) == 0) throw Error(e.kind(), where + inner.substr(1));
    throw Error(e.kind(), where + (inner.rfind('/', 0) == 0 ? "" : ": ") + inner);
  }
}

std::vector<Rational> rational_list(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational_from_json(j[k], where + "/" + std::to_string(k)));
  return out;
}

Interval interval_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [left, right]");
  return Interval{int_from_json(j[0], where + "/0"), int_from_json(j[1], where + "/1")};
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, source + ": byte " + std::to_string(e.byte) + ": invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) bad(where, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, body(e));
  }
}

Json to_json(const Rational& x) { return x.str(); }

Profile profile_from_json(const Json& j) {
  const int m = int_from_json(field(j, "m", ""), "/m");
  const Json& voters = field(j, "voters", "");
  if (!voters.is_array()) bad("/voters", "expected an array");
  std::vector<Ballot> ballots;
  for (std::size_t k = 0; k < voters.size(); ++k) {
    const std::string where = "/voters/" + std::to_string(k);
    const Json& id = field(voters[k], "id", where);
    VoterId voter;
    if (id.is_string()) {
      voter = id.get<std::string>();
    } else if (id.is_number_integer()) {
      voter = std::to_string(id.get<std::int64_t>());
    } else {
      bad(where + "/id", "expected a string or integer id");
    }
    const Interval raw = interval_from_json(field(voters[k], "interval", where), where + "/interval");
    ballots.push_back({voter, located(where + "/interval", [&] { return Interval::make(m, raw.left, raw.right); })});
  }
  return located("/voters", [&] { return Profile(m, std::move(ballots)); });
}

Json to_json(Interval iv) { return Json::array({iv.left, iv.right}); }

Json to_json(const Profile& p) {
  Json voters = Json::array();
  for (const auto& b : p.ballots()) voters.push_back(Json{{"id", b.voter}, {"interval", to_json(b.interval)}});
  return Json{{"m", p.m()}, {"voters", std::move(voters)}};
}

PositionThresholdRule rule_from_json(const Json& j, bool allow_unchecked) {
  const int m = int_from_json(field(j, "m", ""), "/m");
  auto theta_values = rational_list(field(j, "theta", ""), "/theta");
  auto alpha_values = rational_list(field(j, "alpha", ""), "/alpha");
  if (static_cast<int>(theta_values.size()) != m) bad("/theta", "expected " + std::to_string(m) + " entries");
  if (static_cast<int>(alpha_values.size()) != m) bad("/alpha", "expected " + std::to_string(m) + " entries");
  bool unchecked = allow_unchecked;
  if (auto it = j.find("unchecked"); it != j.end()) {
    if (!it->is_boolean()) bad("/unchecked", "expected a boolean");
    unchecked = unchecked || it->get<bool>();
  }
  auto theta = located("/theta", [&] { return ThresholdVector(std::move(theta_values)); });
  auto alpha = located("/alpha", [&] { return WeightVector(std::move(alpha_values)); });
  if (unchecked) return PositionThresholdRule::unchecked(std::move(theta), std::move(alpha));
  return PositionThresholdRule(std::move(theta), std::move(alpha));
}

Json to_json(const PositionThresholdRule& rule) {
  Json theta = Json::array();
  Json alpha = Json::array();
  for (const auto& x : rule.theta().values()) theta.push_back(to_json(x));
  for (const auto& x : rule.alpha().values()) alpha.push_back(to_json(x));
  Json out{{"m", rule.m()}, {"theta", std::move(theta)}, {"alpha", std::move(alpha)}};
  if (!rule.compatible()) out["unchecked"] = true;
  return out;
}

Json to_json(const axioms::Violation& v) {
  Json out{{"axiom", std::string(axioms::to_string(v.axiom))}, {"profile", to_json(v.profile)}};
  if (v.other) out["other"] = to_json(*v.other);
  if (v.voter) out["voter"] = *v.voter;
  if (v.side) out["side"] = to_string(*v.side);
  if (v.report) out["report"] = to_json(*v.report);
  if (v.preference) {
    Json levels = Json::array();
    for (const auto& level : v.preference->levels()) levels.push_back(level);
    out["preference"] = std::move(levels);
  }
  if (v.renaming) {
    Json renaming = Json::object();
    for (const auto& [from, to] : *v.renaming) renaming[from] = to;
    out["renaming"] = std::move(renaming);
  }
  if (v.lambda) out["lambda"] = *v.lambda;
  out["observed"] = v.observed.index;
  out["required"] = v.required;
  return out;
}

axioms::Violation violation_from_json(const Json& j) {
  const Json& axiom_tag = field(j, "axiom", "");
  if (!axiom_tag.is_string()) bad("/axiom", "expected a string");
  const auto axiom = located("/axiom", [&] { return axioms::parse_axiom(axiom_tag.get<std::string>()); });

  auto sub_profile = [&](const char* key) {
    return located(std::string("/") + key, [&] { return profile_from_json(field(j, key, "")); });
  };

  axioms::Violation v{.axiom = axiom,
                      .profile = sub_profile("profile"),
                      .other = std::nullopt,
                      .voter = std::nullopt,
                      .side = std::nullopt,
                      .report = std::nullopt,
                      .preference = std::nullopt,
                      .renaming = std::nullopt,
                      .lambda = std::nullopt,
                      .observed = Alternative{int_from_json(field(j, "observed", ""), "/observed")},
                      .required = ""};
  if (j.contains("other")) v.other = sub_profile("other");
  if (auto it = j.find("voter"); it != j.end()) {
    if (!it->is_string()) bad("/voter", "expected a string");
    v.voter = it->get<std::string>();
  }
  if (auto it = j.find("side"); it != j.end()) {
    if (*it == "left") {
      v.side = Side::left;
    } else if (*it == "right") {
      v.side = Side::right;
    } else {
      bad("/side", "expected \"left\" or \"right\"");
    }
  }
  if (auto it = j.find("report"); it != j.end()) {
    const Interval raw = interval_from_json(*it, "/report");
    v.report = located("/report", [&] { return Interval::make(v.profile.m(), raw.left, raw.right); });
  }
  if (auto it = j.find("preference"); it != j.end()) {
    if (!it->is_array()) bad("/preference", "expected an array of classes");
    std::vector<std::vector<int>> levels;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "/preference/" + std::to_string(k);
      if (!(*it)[k].is_array()) bad(where, "expected an array");
      std::vector<int> level;
      for (std::size_t q = 0; q < (*it)[k].size(); ++q) {
        level.push_back(int_from_json((*it)[k][q], where + "/" + std::to_string(q)));
      }
      levels.push_back(std::move(level));
    }
    v.preference = located("/preference", [&] { return prefs::WeakOrder(v.profile.m(), std::move(levels)); });
  }
  if (auto it = j.find("renaming"); it != j.end()) {
    if (!it->is_object()) bad("/renaming", "expected an object");
    std::map<VoterId, VoterId> renaming;
    for (const auto& [from, to] : it->items()) {
      if (!to.is_string()) bad("/renaming/" + from, "expected a string");
      renaming[from] = to.get<std::string>();
    }
    v.renaming = std::move(renaming);
  }
  if (auto it = j.find("lambda"); it != j.end()) {
    if (!it->is_number_integer()) bad("/lambda", "expected an integer");
    v.lambda = it->get<std::int64_t>();
  }
  if (auto it = j.find("required"); it != j.end() && it->is_string()) v.required = it->get<std::string>();
  return v;
}

Json to_json(const search::CampaignReport& r, bool with_timing) {
  const auto& b = r.bounds;
  Json bounds{{"m_min", b.m_min},         {"m_max", b.m_max},
              {"n_max", b.n_max},         {"pair_n_max", b.pair_n_max},
              {"budget", b.budget},       {"lambda_max", b.lambda_max},
              {"random_samples", b.random_samples}, {"random_n_max", b.random_n_max},
              {"seed", b.seed}};
  Json out{{"rule", r.rule},
           {"axiom", std::string(axioms::to_string(r.axiom))},
           {"bounds", std::move(bounds)},
           {"planned", r.planned},
           {"budget_exceeded", r.budget_exceeded},
           {"counts",
            Json{{"checked", r.checked},
                 {"passed", r.passed},
                 {"vacuous", r.vacuous},
                 {"undetermined", r.undetermined},
                 {"violations", r.first_violation ? 1 : 0}}}};
  out["first_violation"] = r.first_violation ? to_json(*r.first_violation) : Json(nullptr);
  if (with_timing) out["elapsed_seconds"] = r.elapsed_seconds;
  return out;
}

Json to_json(const IncompatibilityWitness& w) {
  return Json{{"kind", "compat"},
              {"index", w.index},
              {"case", static_cast<int>(w.which)},
              {"w1", w.w1},
              {"w2", w.w2},
              {"start", to_json(w.start)},
              {"violation", to_json(w.violation)}};
}

Json to_json(const search::UniquenessWitness& w) {
  Json out{{"kind", "uniqueness"}, {"deviation", std::string(search::to_string(w.kind))}, {"index", w.index}};
  if (w.t > 0) {
    out["t"] = w.t;
  } else {
    out["w1"] = w.w1;
    out["w2"] = w.w2;
  }
  out["violation"] = to_json(w.violation);
  return out;
}

std::string render(const Json& j, bool pretty) { return j.dump(pretty ? 2 : -1) + "\n"; }

}  // namespace ivote::io
