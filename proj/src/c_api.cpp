#include "equivote/equivote.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "equivote/error.hpp"
#include "equivote/galois.hpp"
#include "equivote/interchange.hpp"
#include "equivote/randomized.hpp"
#include "equivote/report.hpp"
#include "equivote/verify.hpp"

struct evr_rule {
  equivote::RuleDocument doc;
};

namespace {

using equivote::ErrorCode;
using equivote::Json;
using equivote::fail;

thread_local std::string last_error;

evr_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return EVR_INVALID_ARGUMENT;
    case ErrorCode::DegreeMismatch: return EVR_DEGREE_MISMATCH;
    case ErrorCode::Parse: return EVR_PARSE;
    case ErrorCode::Infeasible: return EVR_INFEASIBLE;
    case ErrorCode::Overflow: return EVR_OVERFLOW;
    case ErrorCode::Precondition: return EVR_PRECONDITION;
    case ErrorCode::NotEquitable: return EVR_NOT_EQUITABLE;
    case ErrorCode::ConstructionFailed: return EVR_CONSTRUCTION_FAILED;
  }
  return EVR_INTERNAL;
}

template <typename Body>
evr_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return EVR_OK;
  } catch (const equivote::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return EVR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return EVR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return EVR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Json parse_options(const char* text) {
  if (!text || !*text) return Json::object();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Parse, "options must be a JSON object");
  return j;
}

template <typename T>
T param(const Json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("missing parameter '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' has the wrong type");
  }
}

template <typename T>
T param_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? param<T>(j, key) : fallback;
}

std::vector<std::size_t> branching_of(const Json& j) {
  const Json& b = j.at("branching");
  if (b.is_string()) {
    std::vector<std::size_t> out;
    const auto s = b.get<std::string>();
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      try {
        const long v = std::stol(s.substr(pos, comma - pos));
        if (v < 1) fail(ErrorCode::InvalidArgument, "branching factors must be positive");
        out.push_back(static_cast<std::size_t>(v));
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, "malformed branching '" + s + "'");
      }
      pos = comma + 1;
    }
    return out;
  }
  return param<std::vector<std::size_t>>(j, "branching");
}

equivote::RuleDocument construct(const std::string& type, const Json& j) {
  using equivote::VotingRule;
  auto n = [&] { return param<std::size_t>(j, "n"); };
  if (type == "majority") return {VotingRule::majority(n()), std::nullopt};
  if (type == "longest_run") return {VotingRule::longest_run(n()), std::nullopt};
  if (type == "grd") {
    if (j.contains("tree")) return {VotingRule::grd(equivote::grd_tree_from_json(j.at("tree"))), std::nullopt};
    if (!j.contains("branching")) fail(ErrorCode::InvalidArgument, "grd requires a branching vector");
    const auto b = branching_of(j);
    if (b.empty()) fail(ErrorCode::InvalidArgument, "grd requires a branching vector");
    return {VotingRule::grd(equivote::GrdTree::uniform(b)), std::nullopt};
  }
  if (type == "ccc")
    return {VotingRule::ccc(param<std::size_t>(j, "rows"), param<std::size_t>(j, "cols")), std::nullopt};
  if (type == "coalition") {
    std::vector<equivote::Coalition> family;
    for (auto& m : param<std::vector<std::vector<equivote::Point>>>(j, "family"))
      family.emplace_back(n(), std::move(m));
    return {VotingRule::coalition(n(), std::move(family)), std::nullopt};
  }
  if (type == "dictator")
    return {VotingRule::dictator(n(), param_or<equivote::Point>(j, "voter", 0)), std::nullopt};
  if (type == "chair")
    return {VotingRule::chair(n(), param_or<equivote::Point>(j, "chair", 0)), std::nullopt};
  if (type == "restricted_majority")
    return {VotingRule::restricted_majority(n(), param<std::vector<equivote::Point>>(j, "voters")),
            std::nullopt};
  if (type == "constant") {
    const int v = param<int>(j, "value");
    if (!equivote::is_vote(v)) fail(ErrorCode::InvalidArgument, "value must be -1, 0 or 1");
    return {VotingRule::constant(n(), static_cast<equivote::Vote>(v)), std::nullopt};
  }
  if (type == "projective" || type == "fano") {
    const auto p = type == "fano" ? param_or<std::uint32_t>(j, "p", 2) : param<std::uint32_t>(j, "p");
    return {equivote::build_projective_rule(p), std::nullopt};
  }
  if (type == "pgl2_random") {
    auto built = equivote::build_3_equitable_rule(param<std::uint32_t>(j, "p"),
                                                  param_or<std::uint64_t>(j, "seed", 1));
    return {std::move(built.rule), std::move(built.provenance)};
  }
  if (type == "cyclic_random") {
    const auto size = n();
    equivote::SeededRng rng(param_or<std::uint64_t>(j, "seed", 1));
    auto built = equivote::build_rule_from_group(equivote::cyclic_group(size), rng,
                                                 "cyclic:" + std::to_string(size));
    return {std::move(built.rule), std::move(built.provenance)};
  }
  fail(ErrorCode::InvalidArgument, "unknown rule type '" + type + "'");
}

equivote::Caps caps_of(const Json& options) {
  return options.contains("caps") ? equivote::caps_from_json(options.at("caps")) : equivote::Caps{};
}

bool human(const Json& options) {
  const auto f = param_or<std::string>(options, "format", "machine");
  if (f != "machine" && f != "human") fail(ErrorCode::InvalidArgument, "format must be human or machine");
  return f == "human";
}

}  // namespace

extern "C" {

const char* evr_last_error(void) { return last_error.c_str(); }

const char* evr_version(void) { return "1.0.0"; }

const char* evr_status_name(evr_status status) {
  switch (status) {
    case EVR_OK: return "ok";
    case EVR_INVALID_ARGUMENT: return "invalid_argument";
    case EVR_DEGREE_MISMATCH: return "degree_mismatch";
    case EVR_PARSE: return "parse";
    case EVR_INFEASIBLE: return "infeasible";
    case EVR_OVERFLOW: return "overflow";
    case EVR_PRECONDITION: return "precondition";
    case EVR_NOT_EQUITABLE: return "not_equitable";
    case EVR_CONSTRUCTION_FAILED: return "construction_failed";
    case EVR_INTERNAL: return "internal";
  }
  return "unknown";
}

void evr_string_free(char* s) { std::free(s); }

evr_status evr_rule_construct(const char* type, const char* params_json, evr_rule** out) {
  return guarded([&] {
    if (!type || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = nullptr;
    auto doc = construct(type, parse_options(params_json));
    *out = new evr_rule{std::move(doc)};
  });
}

evr_status evr_rule_parse(const char* document, evr_rule** out) {
  return guarded([&] {
    if (!document || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = nullptr;
    auto doc = equivote::parse_rule(document);
    *out = new evr_rule{std::move(doc)};
  });
}

evr_status evr_rule_serialize(const evr_rule* rule, char** out) {
  return guarded([&] {
    if (!rule || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = copy_out(equivote::serialize_rule(rule->doc));
  });
}

void evr_rule_free(evr_rule* rule) { delete rule; }

size_t evr_rule_degree(const evr_rule* rule) { return rule ? rule->doc.rule.degree() : 0; }

evr_status evr_rule_evaluate(const evr_rule* rule, const int8_t* votes, size_t n, int8_t* out) {
  return guarded([&] {
    if (!rule || !out || (!votes && n > 0)) fail(ErrorCode::InvalidArgument, "null argument");
    std::vector<equivote::Vote> v(votes, votes + n);
    *out = equivote::evaluate(rule->doc.rule, equivote::VoteProfile(std::move(v)));
  });
}

evr_status evr_analyze(const evr_rule* rule, const char* options_json, char** out) {
  return guarded([&] {
    if (!rule || !out) fail(ErrorCode::InvalidArgument, "null argument");
    const Json options = parse_options(options_json);
    for (const auto& [key, value] : options.items())
      if (key != "equity" && key != "k" && key != "min_coalition" && key != "pivotality" &&
          key != "caps" && key != "format")
        fail(ErrorCode::InvalidArgument, "unknown analysis option '" + key + "'");
    equivote::AnalyzeOptions opts;
    opts.equity = param_or<bool>(options, "equity", false);
    opts.k = param_or<std::size_t>(options, "k", 0);
    opts.min_coalition = param_or<bool>(options, "min_coalition", false);
    opts.pivotality = param_or<bool>(options, "pivotality", false);
    const auto report = equivote::analyze(rule->doc, opts, caps_of(options));
    *out = copy_out(human(options) ? equivote::analysis_to_human(report) : equivote::dump(report));
  });
}

evr_status evr_verify(const char* theorem, const char* options_json, char** out, int* passed) {
  return guarded([&] {
    if (!theorem || !out || !passed) fail(ErrorCode::InvalidArgument, "null argument");
    const Json options = parse_options(options_json);
    for (const auto& [key, value] : options.items())
      if (key != "params" && key != "caps" && key != "format")
        fail(ErrorCode::InvalidArgument, "unknown verify option '" + key + "'");
    const auto caps = caps_of(options);
    const Json params = options.contains("params") ? options.at("params") : Json::object();
    std::vector<equivote::VerificationReport> reports;
    if (std::string(theorem) == "all") {
      if (!params.empty()) fail(ErrorCode::InvalidArgument, "verify all takes no parameters");
      reports = equivote::run_all(caps);
    } else {
      reports.push_back(equivote::run_verifier(theorem, params, caps));
    }
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    std::string text;
    if (human(options)) {
      for (const auto& r : reports) text += equivote::report_to_human(r);
      if (reports.size() > 1) text += ok ? "all verifiers passed\n" : "some verifiers FAILED\n";
    } else if (reports.size() == 1) {
      text = equivote::dump(equivote::report_to_json(reports.front()));
    } else {
      text = equivote::dump(equivote::suite_to_json(reports));
    }
    *out = copy_out(text);
    *passed = ok ? 1 : 0;
  });
}

evr_status evr_geometry_document(uint32_t p, char** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = copy_out(equivote::dump(equivote::geometry_to_json(equivote::projective_plane(p))));
  });
}

}  // extern "C"
