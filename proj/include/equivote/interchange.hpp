#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "equivote/caps.hpp"
#include "equivote/galois.hpp"
#include "equivote/randomized.hpp"
#include "equivote/rules.hpp"

namespace equivote {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct RuleDocument {
  VotingRule rule;
  std::optional<Provenance> provenance;

  friend bool operator==(const RuleDocument&, const RuleDocument&) = default;
};

Json rule_to_json(const RuleDocument& doc);
/// Throws Parse on malformed documents and InvalidArgument when the payload
/// does not describe a valid rule.
RuleDocument rule_from_json(const Json& j);

std::string serialize_rule(const RuleDocument& doc);
RuleDocument parse_rule(std::string_view text);

/// Accepts a JSON array ([1,0,-1]) or a comma separated list (1,0,-1).
VoteProfile parse_profile(std::string_view text);

Json caps_to_json(const Caps& caps);
/// Starts from `base` and overrides the keys present; unknown keys are a
/// Parse error.
Caps caps_from_json(const Json& j, Caps base = {});

Json geometry_to_json(const ProjectiveGeometry& g);

Json coalition_to_json(const Coalition& c);

/// Nested arrays with integer leaves, e.g. [[0,1,2],[3,4,5],[6,7,8]].
GrdTree grd_tree_from_json(const Json& j);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace equivote
