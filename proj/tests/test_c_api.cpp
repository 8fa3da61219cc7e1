#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "equivote/equivote.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  evr_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("construct, evaluate, serialize") {
  evr_rule* r = nullptr;
  REQUIRE(evr_rule_construct("grd", R"({"branching":"3,3"})", &r) == EVR_OK);
  CHECK(evr_rule_degree(r) == 9);
  const std::int8_t fig[9] = {1, 1, 1, 1, 1, -1, -1, -1, -1};
  std::int8_t out = 0;
  CHECK(evr_rule_evaluate(r, fig, 9, &out) == EVR_OK);
  CHECK(out == 1);
  CHECK(evr_rule_evaluate(r, fig, 8, &out) == EVR_DEGREE_MISMATCH);
  const std::int8_t bad[9] = {2, 1, 1, 1, 1, -1, -1, -1, -1};
  CHECK(evr_rule_evaluate(r, bad, 9, &out) == EVR_INVALID_ARGUMENT);

  char* doc = nullptr;
  REQUIRE(evr_rule_serialize(r, &doc) == EVR_OK);
  const std::string text = take(doc);
  evr_rule* back = nullptr;
  REQUIRE(evr_rule_parse(text.c_str(), &back) == EVR_OK);
  char* doc2 = nullptr;
  REQUIRE(evr_rule_serialize(back, &doc2) == EVR_OK);
  CHECK(take(doc2) == text);
  evr_rule_free(back);
  evr_rule_free(r);
  evr_rule_free(nullptr);
}

TEST_CASE("every constructible type") {
  const char* cases[][2] = {{"majority", R"({"n":5})"},
                            {"longest_run", R"({"n":9})"},
                            {"grd", R"({"tree":[[0],[1],[2,3,4]]})"},
                            {"ccc", R"({"rows":2,"cols":3})"},
                            {"coalition", R"({"n":3,"family":[[0,1],[1,2],[0,2]]})"},
                            {"dictator", R"({"n":3})"},
                            {"chair", R"({"n":4,"chair":2})"},
                            {"restricted_majority", R"({"n":4,"voters":[0,1,2]})"},
                            {"constant", R"({"n":2,"value":-1})"},
                            {"fano", nullptr},
                            {"projective", R"({"p":3})"},
                            {"pgl2_random", R"({"p":5,"seed":2})"},
                            {"cyclic_random", R"({"n":16,"seed":7})"}};
  for (const auto& c : cases) {
    evr_rule* r = nullptr;
    CHECK_MESSAGE(evr_rule_construct(c[0], c[1], &r) == EVR_OK, c[0], " ", evr_last_error());
    evr_rule_free(r);
  }
}

TEST_CASE("errors carry codes and messages") {
  evr_rule* r = nullptr;
  CHECK(evr_rule_construct("nope", "{}", &r) == EVR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::strlen(evr_last_error()) > 0);
  CHECK(evr_rule_construct("projective", R"({"p":4})", &r) == EVR_INVALID_ARGUMENT);
  CHECK(evr_rule_construct("majority", "{", &r) == EVR_PARSE);
  CHECK(evr_rule_construct("coalition", R"({"n":4,"family":[[0,1],[2,3]]})", &r) == EVR_INVALID_ARGUMENT);
  CHECK(evr_rule_parse("not json", &r) == EVR_PARSE);
  CHECK(evr_rule_construct(nullptr, "{}", &r) == EVR_INVALID_ARGUMENT);
  CHECK(std::string(evr_status_name(EVR_OVERFLOW)) == "overflow");
  CHECK(std::string(evr_version()) == "1.0.0");
}

TEST_CASE("analyze and verify") {
  evr_rule* r = nullptr;
  REQUIRE(evr_rule_construct("fano", "{}", &r) == EVR_OK);
  char* report = nullptr;
  REQUIRE(evr_analyze(r, R"({"equity":true,"k":3,"min_coalition":true,"format":"machine"})", &report) == EVR_OK);
  const auto j = nlohmann::json::parse(take(report));
  CHECK(j["min_coalition"]["size"] == 3);
  CHECK(evr_analyze(r, R"({"caps":{"bogus":1}})", &report) == EVR_PARSE);
  evr_rule_free(r);

  int passed = 0;
  REQUIRE(evr_verify("lemma3", R"({"format":"machine"})", &report, &passed) == EVR_OK);
  CHECK(passed == 1);
  CHECK(nlohmann::json::parse(take(report))["theorem"] == "lemma3");
  CHECK(evr_verify("thm1", R"({"params":{"n":"4..6"},"format":"human"})", &report, &passed) == EVR_OK);
  CHECK(take(report).find("thm1: PASS") != std::string::npos);
  CHECK(evr_verify("bogus", nullptr, &report, &passed) == EVR_INVALID_ARGUMENT);

  REQUIRE(evr_geometry_document(3, &report) == EVR_OK);
  CHECK(nlohmann::json::parse(take(report))["lines"].size() == 13);
  CHECK(evr_geometry_document(6, &report) == EVR_INVALID_ARGUMENT);
}

TEST_CASE("analysis is identical after a serialize and parse round trip") {
  const char* opts = R"({"equity":true,"k":2,"min_coalition":true,"pivotality":true,"format":"machine"})";
  for (const char* type : {"longest_run", "ccc", "pgl2_random"}) {
    const char* params = std::string(type) == "ccc" ? R"({"rows":3,"cols":3})"
                         : std::string(type) == "longest_run" ? R"({"n":8})"
                                                              : R"({"p":5,"seed":4})";
    evr_rule* r = nullptr;
    REQUIRE(evr_rule_construct(type, params, &r) == EVR_OK);
    char* direct = nullptr;
    REQUIRE(evr_analyze(r, opts, &direct) == EVR_OK);
    char* doc = nullptr;
    REQUIRE(evr_rule_serialize(r, &doc) == EVR_OK);
    evr_rule* back = nullptr;
    REQUIRE(evr_rule_parse(doc, &back) == EVR_OK);
    evr_string_free(doc);
    char* again = nullptr;
    REQUIRE(evr_analyze(back, opts, &again) == EVR_OK);
    CHECK(take(direct) == take(again));
    evr_rule_free(r);
    evr_rule_free(back);
  }
}
