#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ivote/axioms.hpp"
#include "ivote/profile.hpp"
#include "ivote/rules.hpp"
#include "ivote/search.hpp"
#include "ivote/witness.hpp"

namespace ivote::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become parse-error with the byte offset.
Json parse_json(std::string_view text, const std::string& source = "input");
/// Reads and parses a file; an unreadable file is a parse-error too.
Json read_json_file(const std::string& path);

/// "p/q" string; a JSON integer is accepted as well.
Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const Rational& x);

/// {"m": 4, "voters": [{"id": "1", "interval": [1, 2]}, ...]}. Numeric ids are accepted.
Profile profile_from_json(const Json& j);
Json to_json(const Profile& p);

/// {"m": 4, "theta": ["1/2", ...], "alpha": [...], "unchecked": false}.
/// Incompatible vectors throw incompatible-rule unless "unchecked" is true or `allow_unchecked`.
PositionThresholdRule rule_from_json(const Json& j, bool allow_unchecked = false);
Json to_json(const PositionThresholdRule& rule);

Json to_json(Interval iv);
Json to_json(const axioms::Violation& v);
axioms::Violation violation_from_json(const Json& j);

/// Deterministic campaign rendering; elapsed time only when `with_timing`.
Json to_json(const search::CampaignReport& r, bool with_timing = false);
Json to_json(const IncompatibilityWitness& w);
Json to_json(const search::UniquenessWitness& w);

/// Two-space indentation with `pretty`, otherwise compact; always newline-terminated.
std::string render(const Json& j, bool pretty);

}  // namespace ivote::io
