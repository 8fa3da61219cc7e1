#include "equivote/interchange.hpp"

#include <cctype>
#include <charconv>

#include "equivote/error.hpp"

namespace equivote {

namespace {

Json tree_to_json(const GrdTree& t) {
  if (t.is_leaf()) return t.voter;
  Json arr = Json::array();
  for (const auto& c : t.children) arr.push_back(tree_to_json(c));
  return arr;
}

}  // namespace

GrdTree grd_tree_from_json(const Json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) fail(ErrorCode::Parse, "negative voter in grd tree");
    return GrdTree::leaf(static_cast<Point>(v));
  }
  if (!j.is_array()) fail(ErrorCode::Parse, "grd tree nodes must be integers or arrays");
  std::vector<GrdTree> kids;
  for (const auto& c : j) kids.push_back(grd_tree_from_json(c));
  return GrdTree::node(std::move(kids));
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("field '") + key + "': " + e.what());
  }
}

std::vector<Point> points_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::Parse, std::string(what) + " must be an array");
  std::vector<Point> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
      fail(ErrorCode::Parse, std::string(what) + " must hold voter indices");
    out.push_back(x.get<Point>());
  }
  return out;
}

Point point_field(const Json& j, const char* key) {
  const auto& x = field(j, key);
  if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
    fail(ErrorCode::Parse, std::string("field '") + key + "' must be a voter index");
  return x.get<Point>();
}

}  // namespace

Json coalition_to_json(const Coalition& c) {
  Json arr = Json::array();
  for (Point v : c.members()) arr.push_back(v);
  return arr;
}

Json rule_to_json(const RuleDocument& doc) {
  const auto& rule = doc.rule;
  Json payload = Json::object();
  struct Visitor {
    Json& out;
    void operator()(const MajorityRule&) {}
    void operator()(const LongestRunRule&) {}
    void operator()(const GrdRule& r) { out["tree"] = tree_to_json(r.tree); }
    void operator()(const CccRule& r) {
      out["rows"] = r.rows;
      out["cols"] = r.cols;
    }
    void operator()(const CoalitionRule& r) {
      Json fam = Json::array();
      for (const auto& c : r.family) fam.push_back(coalition_to_json(c));
      out["family"] = std::move(fam);
    }
    void operator()(const DictatorRule& r) { out["voter"] = r.voter; }
    void operator()(const ChairRule& r) { out["chair"] = r.chair; }
    void operator()(const RestrictedMajorityRule& r) { out["voters"] = r.voters; }
    void operator()(const ConstantRule& r) { out["value"] = static_cast<int>(r.value); }
  };
  std::visit(Visitor{payload}, rule.variant());

  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = rule.type_tag();
  j["n"] = rule.degree();
  j["payload"] = std::move(payload);
  if (doc.provenance) {
    const auto& p = *doc.provenance;
    j["provenance"] = {{"seed", p.seed},
                       {"rng", SeededRng::kAlgorithm},
                       {"group", p.group},
                       {"ell", p.ell},
                       {"attempts", p.attempts}};
  }
  return j;
}

RuleDocument rule_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "rule document must be an object");
  const int version = get<int>(j, "format_version");
  if (version != kFormatVersion)
    fail(ErrorCode::Parse, "unsupported format_version " + std::to_string(version));
  const auto type = get<std::string>(j, "type");
  const auto n = get<std::size_t>(j, "n");
  const Json empty = Json::object();
  const Json& payload = j.contains("payload") ? j.at("payload") : empty;

  auto make = [&]() -> VotingRule {
    if (type == "majority") return VotingRule::majority(n);
    if (type == "longest_run") return VotingRule::longest_run(n);
    if (type == "grd") return VotingRule::grd(grd_tree_from_json(field(payload, "tree")));
    if (type == "ccc")
      return VotingRule::ccc(get<std::size_t>(payload, "rows"), get<std::size_t>(payload, "cols"));
    if (type == "coalition") {
      const auto& fam = field(payload, "family");
      if (!fam.is_array()) fail(ErrorCode::Parse, "family must be an array");
      std::vector<Coalition> family;
      for (const auto& c : fam) family.emplace_back(n, points_from_json(c, "family member"));
      return VotingRule::coalition(n, std::move(family));
    }
    if (type == "dictator") return VotingRule::dictator(n, point_field(payload, "voter"));
    if (type == "chair") return VotingRule::chair(n, point_field(payload, "chair"));
    if (type == "restricted_majority")
      return VotingRule::restricted_majority(n, points_from_json(field(payload, "voters"), "voters"));
    if (type == "constant") {
      const int v = get<int>(payload, "value");
      if (!is_vote(v)) fail(ErrorCode::Parse, "constant value must be -1, 0 or 1");
      return VotingRule::constant(n, static_cast<Vote>(v));
    }
    fail(ErrorCode::Parse, "unknown rule type '" + type + "'");
  };
  RuleDocument doc{make(), std::nullopt};
  if (doc.rule.degree() != n)
    fail(ErrorCode::Parse, "n = " + std::to_string(n) + " disagrees with the payload (" +
                               std::to_string(doc.rule.degree()) + " voters)");
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    doc.provenance = Provenance{get<std::uint64_t>(p, "seed"), get<std::string>(p, "group"),
                                get<std::uint64_t>(p, "ell"), get<std::uint64_t>(p, "attempts")};
  }
  return doc;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_rule(const RuleDocument& doc) { return dump(rule_to_json(doc)); }

RuleDocument parse_rule(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  return rule_from_json(j);
}

VoteProfile parse_profile(std::string_view text) {
  std::vector<Vote> votes;
  auto push = [&](long long v) {
    if (v < -1 || v > 1)
      fail(ErrorCode::Parse, "votes must be -1, 0 or 1");
    votes.push_back(static_cast<Vote>(v));
  };
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    try {
      for (const auto& x : Json::parse(text)) {
        if (!x.is_number_integer()) fail(ErrorCode::Parse, "votes must be integers");
        push(x.get<long long>());
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, e.what());
    }
    return VoteProfile(std::move(votes));
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto token = text.substr(pos, comma - pos);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      fail(ErrorCode::Parse, "bad vote '" + std::string(token) + "'");
    push(v);
    pos = comma + 1;
  }
  return VoteProfile(std::move(votes));
}

Json caps_to_json(const Caps& caps) {
  return {{"profile_n", caps.profile_n},
          {"binary_n", caps.binary_n},
          {"permutation_n", caps.permutation_n},
          {"roles_n", caps.roles_n},
          {"closure_order", caps.closure_order},
          {"automorphism_order", caps.automorphism_order},
          {"subset_budget", caps.subset_budget},
          {"max_witnesses", caps.max_witnesses}};
}

Caps caps_from_json(const Json& j, Caps base) {
  if (!j.is_object()) fail(ErrorCode::Parse, "caps must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_unsigned())
      fail(ErrorCode::Parse, "cap '" + key + "' must be a non-negative integer");
    const auto v = value.get<std::uint64_t>();
    if (key == "profile_n") base.profile_n = v;
    else if (key == "binary_n") base.binary_n = v;
    else if (key == "permutation_n") base.permutation_n = v;
    else if (key == "roles_n") base.roles_n = v;
    else if (key == "closure_order") base.closure_order = v;
    else if (key == "automorphism_order") base.automorphism_order = v;
    else if (key == "subset_budget") base.subset_budget = v;
    else if (key == "max_witnesses") base.max_witnesses = v;
    else if (key == "workers") base.workers = static_cast<unsigned>(v);
    else fail(ErrorCode::Parse, "unknown cap '" + key + "'");
  }
  return base;
}

Json geometry_to_json(const ProjectiveGeometry& g) {
  Json points = Json::array();
  for (const auto& c : g.points) points.push_back(c);
  Json lines = Json::array();
  for (const auto& l : g.lines) lines.push_back(coalition_to_json(l));
  return {{"format_version", kFormatVersion},
          {"p", g.p},
          {"points", std::move(points)},
          {"lines", std::move(lines)}};
}

}  // namespace equivote
