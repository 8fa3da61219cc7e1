#include <doctest.h>

#include "equivote/error.hpp"
#include "equivote/galois.hpp"
#include "equivote/interchange.hpp"
#include "equivote/randomized.hpp"
#include "equivote/report.hpp"
#include "equivote/verify.hpp"

using namespace equivote;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_rule(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("rule documents round trip") {
  const std::vector<VotingRule> rules = {
      VotingRule::majority(5),
      VotingRule::longest_run(9),
      VotingRule::grd(GrdTree::uniform(std::vector<std::size_t>{3, 3})),
      VotingRule::grd(GrdTree::from_counties({{0}, {1}, {2, 3, 4}})),
      VotingRule::ccc(2, 3),
      build_projective_rule(2),
      VotingRule::dictator(4, 2),
      VotingRule::chair(4, 1),
      VotingRule::restricted_majority(5, {0, 2, 4}),
      VotingRule::constant(3, kAbstain)};
  for (const auto& r : rules) {
    const RuleDocument doc{r, std::nullopt};
    const auto text = serialize_rule(doc);
    CHECK(parse_rule(text) == doc);
    CHECK(serialize_rule(parse_rule(text)) == text);
  }
  const auto gr = build_3_equitable_rule(5, 9);
  const RuleDocument doc{gr.rule, gr.provenance};
  const auto text = serialize_rule(doc);
  CHECK(parse_rule(text) == doc);
  const auto j = Json::parse(text);
  CHECK(j["provenance"]["rng"] == "mt19937_64");
  CHECK(j["provenance"]["group"] == "pgl2:5");
  CHECK(j["format_version"] == 1);
}

TEST_CASE("rule document errors") {
  CHECK(code_of("{") == ErrorCode::Parse);
  CHECK(code_of("[]") == ErrorCode::Parse);
  CHECK(code_of(R"({"format_version":2,"type":"majority","n":3})") == ErrorCode::Parse);
  CHECK(code_of(R"({"format_version":1,"type":"nope","n":3})") == ErrorCode::Parse);
  CHECK(code_of(R"({"format_version":1,"type":"ccc","n":5,"payload":{"rows":2,"cols":2}})") == ErrorCode::Parse);
  CHECK(code_of(R"({"format_version":1,"type":"grd","n":2,"payload":{"tree":[0,"x"]}})") == ErrorCode::Parse);
  CHECK(code_of(R"({"format_version":1,"type":"constant","n":2,"payload":{"value":4}})") == ErrorCode::Parse);
  // semantic failures keep their own code
  CHECK(code_of(R"({"format_version":1,"type":"coalition","n":4,"payload":{"family":[[0,1],[2,3]]}})") ==
        ErrorCode::InvalidArgument);
  CHECK(parse_rule(R"({"format_version":1,"type":"majority","n":3})").rule == VotingRule::majority(3));
}

TEST_CASE("profiles") {
  CHECK(parse_profile("1,0,-1") == VoteProfile{1, 0, -1});
  CHECK(parse_profile(" 1 , +1 ,-1") == VoteProfile{1, 1, -1});
  CHECK(parse_profile("[1,-1]") == VoteProfile{1, -1});
  for (const char* bad : {"", "1,,0", "2", "1,a", "[1,2]", "[1.5]", "1 0"}) CHECK_THROWS_AS(parse_profile(bad), Error);
}

TEST_CASE("caps") {
  Caps c;
  c.profile_n = 9;
  c.workers = 4;
  const auto j = caps_to_json(c);
  CHECK_FALSE(j.contains("workers"));
  const auto back = caps_from_json(j);
  CHECK(back.profile_n == 9);
  CHECK(back.workers == 1);
  CHECK(caps_from_json(Json::parse(R"({"workers":3})")).workers == 3);
  CHECK_THROWS_AS(caps_from_json(Json::parse(R"({"bogus":1})")), Error);
  CHECK_THROWS_AS(caps_from_json(Json::parse(R"({"profile_n":-1})")), Error);
}

TEST_CASE("geometry document") {
  const auto j = geometry_to_json(projective_plane(2));
  CHECK(j["points"].size() == 7);
  CHECK(j["lines"].size() == 7);
  CHECK(j["points"][0] == Json::parse("[0,0,1]"));
}

TEST_CASE("analysis report") {
  AnalyzeOptions opts;
  opts.equity = true;
  opts.k = 3;
  opts.min_coalition = true;
  opts.pivotality = true;
  const RuleDocument fano{build_projective_rule(2), std::nullopt};
  const auto a = analyze(fano, opts, Caps{});
  CHECK(a["kind"] == "analysis");
  CHECK(a["equitable"]["verdict"] == "true");
  CHECK(a["min_coalition"]["size"] == 3);
  CHECK(a["aut_order"]["value"] == 168);
  CHECK(dump(a) == dump(analyze(fano, opts, Caps{})));
  Caps threaded;
  threaded.workers = 3;
  CHECK(dump(a) == dump(analyze(fano, opts, threaded)));
  CHECK(parse_rule(a["rule"].dump()) == fano);
  CHECK_FALSE(analysis_to_human(a).empty());
}

TEST_CASE("verification reports") {
  const auto r = run_verifier("thm7", Json::object(), Caps{});
  CHECK(r.passed());
  const auto j = report_to_json(r);
  CHECK(j["theorem"] == "thm7");
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(dump(j) == dump(report_to_json(run_verifier("thm7", Json::object(), Caps{}))));
  CHECK_THROWS_AS(run_verifier("thm99", Json::object(), Caps{}), Error);
  CHECK_THROWS_AS(run_verifier("thm1", Json{{"bogus", "1"}}, Caps{}), Error);
  CHECK(verifier_ids().size() == 14);
}
