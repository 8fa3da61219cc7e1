// Command-line front end over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "equivote/equivote.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Failure{kExitUsage, "cannot read " + path};
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Failure{kExitUsage, "cannot write " + out};
  f << text;
}

void check(evr_status s) {
  if (s != EVR_OK) throw Failure{kExitUsage, std::string(evr_status_name(s)) + ": " + evr_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  evr_string_free(s);
  return out;
}

struct RuleHandle {
  evr_rule* rule = nullptr;
  ~RuleHandle() { evr_rule_free(rule); }
};

// --caps takes inline JSON or a file holding it.
Json caps_json(const std::string& caps, unsigned workers) {
  Json j = Json::object();
  if (!caps.empty()) {
    const auto first = caps.find_first_not_of(" \t\n");
    const std::string text = first != std::string::npos && caps[first] == '{' ? caps : read_input(caps);
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Failure{kExitUsage, std::string("bad --caps: ") + e.what()};
    }
  }
  if (workers > 0) j["workers"] = workers;
  return j;
}

void load_rule(const std::string& path, RuleHandle& h) {
  check(evr_rule_parse(read_input(path).c_str(), &h.rule));
}

std::vector<std::int8_t> parse_votes(const std::string& text) {
  std::vector<std::int8_t> out;
  std::string s = text;
  if (!s.empty() && s.front() == '[') {
    try {
      for (const auto& v : Json::parse(s)) {
        const int x = v.get<int>();
        if (x < -1 || x > 1) throw Failure{kExitUsage, "votes must be -1, 0 or 1"};
        out.push_back(static_cast<std::int8_t>(x));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Failure{kExitUsage, std::string("bad profile: ") + e.what()};
    }
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(tok, &used);
    } catch (const std::logic_error&) {
      throw Failure{kExitUsage, "bad vote '" + tok + "'"};
    }
    if (used != tok.size() || x < -1 || x > 1) throw Failure{kExitUsage, "bad vote '" + tok + "'"};
    out.push_back(static_cast<std::int8_t>(x));
  }
  if (out.empty()) throw Failure{kExitUsage, "empty profile"};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equitable voting rules: construct, evaluate, analyze and verify."};
  app.require_subcommand(1);

  std::string format = "human";
  std::string out;
  std::string caps;
  unsigned workers = 0;
  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--out", out, "Write output to FILE");
    if (with_format) {
      cmd->add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
      cmd->add_option("--caps", caps, "Cap overrides as JSON or a JSON file");
      cmd->add_option("--workers", workers, "Worker threads");
    }
  };

  // construct
  auto* construct = app.add_subcommand("construct", "Build a rule document");
  std::string type;
  std::optional<long long> n, p, rows, cols, seed, voter, chair, value;
  std::string branching, family, voters, tree;
  construct->add_option("--type", type, "majority, longest_run, grd, ccc, coalition, dictator, chair, "
                                        "restricted_majority, constant, fano, projective, pgl2_random, "
                                        "cyclic_random")->required();
  construct->add_option("--n", n, "Number of voters");
  construct->add_option("--p", p, "Prime");
  construct->add_option("--branching", branching, "Uniform grd branching, e.g. 3,3");
  construct->add_option("--tree", tree, "grd tree as nested JSON arrays");
  construct->add_option("--rows", rows);
  construct->add_option("--cols", cols);
  construct->add_option("--seed", seed);
  construct->add_option("--voter", voter, "Dictator");
  construct->add_option("--chair", chair);
  construct->add_option("--voters", voters, "Voters of a restricted majority, e.g. 0,2,4");
  construct->add_option("--value", value, "Outcome of a constant rule");
  construct->add_option("--family", family, "Coalition family as JSON, e.g. [[0,1],[1,2],[0,2]]");
  add_common(construct, false);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a rule on one profile");
  std::string rule_file, profile;
  eval->add_option("rule", rule_file, "Rule document (- for stdin)")->required();
  eval->add_option("profile", profile, "Votes, e.g. 1,0,-1 or [1,0,-1]")->required();
  add_common(eval, false);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Equity, k-equity, minimal coalitions, pivotality");
  bool equity = false, min_coalition = false, piv = false;
  std::size_t k = 0;
  analyze->add_option("rule", rule_file, "Rule document (- for stdin)")->required();
  analyze->add_flag("--equity", equity);
  analyze->add_option("--k", k, "Check k-equity for 2..k");
  analyze->add_flag("--min-coalition", min_coalition);
  analyze->add_flag("--pivotality", piv);
  add_common(analyze, true);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a desk-scale theorem verifier");
  std::string theorem, vn, vp, vdepth, vseed, vgroup, vlr;
  verify->add_option("theorem", theorem,
                     "thm1 thm2 thm3 lemma1 lemma3 prop1A prop1B prop2A prop3 prop4 thm7 thm8 "
                     "pivotality grd_unequal | all")->required();
  verify->add_option("--n", vn, "n, a range a..b or a list a,b,c");
  verify->add_option("--p", vp, "Primes");
  verify->add_option("--depth", vdepth, "GRD depths");
  verify->add_option("--seed", vseed);
  verify->add_option("--group", vgroup, "cyclic or pgl2");
  verify->add_option("--longest-run-n", vlr, "Longest-run sizes for thm2");
  add_common(verify, true);

  // geometry
  auto* geometry = app.add_subcommand("geometry", "Points and lines of PG(2,p)");
  long long gp = 2;
  geometry->add_option("--p", gp, "Prime")->required();
  add_common(geometry, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) {
      Json params = Json::object();
      auto put = [&](const char* key, const std::optional<long long>& v) {
        if (v) params[key] = *v;
      };
      put("n", n);
      put("p", p);
      put("rows", rows);
      put("cols", cols);
      put("seed", seed);
      put("voter", voter);
      put("chair", chair);
      put("value", value);
      if (!branching.empty()) params["branching"] = branching;
      try {
        if (!tree.empty()) params["tree"] = Json::parse(tree);
        if (!family.empty()) params["family"] = Json::parse(family);
        if (!voters.empty()) params["voters"] = Json::parse("[" + voters + "]");
      } catch (const nlohmann::json::exception& e) {
        throw Failure{kExitUsage, std::string("bad JSON argument: ") + e.what()};
      }
      RuleHandle h;
      check(evr_rule_construct(type.c_str(), params.dump().c_str(), &h.rule));
      char* doc = nullptr;
      check(evr_rule_serialize(h.rule, &doc));
      write_output(take(doc), out);
      return kExitOk;
    }
    if (*eval) {
      RuleHandle h;
      load_rule(rule_file, h);
      const auto votes = parse_votes(profile);
      std::int8_t result = 0;
      check(evr_rule_evaluate(h.rule, votes.data(), votes.size(), &result));
      write_output(std::to_string(result) + "\n", out);
      return kExitOk;
    }
    if (*analyze) {
      RuleHandle h;
      load_rule(rule_file, h);
      Json options = {{"equity", equity},
                      {"k", k},
                      {"min_coalition", min_coalition},
                      {"pivotality", piv},
                      {"caps", caps_json(caps, workers)},
                      {"format", format}};
      char* report = nullptr;
      check(evr_analyze(h.rule, options.dump().c_str(), &report));
      write_output(take(report), out);
      return kExitOk;
    }
    if (*verify) {
      Json params = Json::object();
      if (!vn.empty()) params["n"] = vn;
      if (!vp.empty()) params["p"] = vp;
      if (!vdepth.empty()) params["depth"] = vdepth;
      if (!vseed.empty()) params["seed"] = vseed;
      if (!vgroup.empty()) params["group"] = vgroup;
      if (!vlr.empty()) params["longest_run_n"] = vlr;
      Json options = {{"params", params}, {"caps", caps_json(caps, workers)}, {"format", format}};
      char* report = nullptr;
      int passed = 0;
      check(evr_verify(theorem.c_str(), options.dump().c_str(), &report, &passed));
      write_output(take(report), out);
      if (!passed) {
        std::cerr << "verification failed\n";
        return kExitFailed;
      }
      return kExitOk;
    }
    if (*geometry) {
      if (gp < 2 || gp > 1000) throw Failure{kExitUsage, "--p out of range"};
      char* doc = nullptr;
      check(evr_geometry_document(static_cast<std::uint32_t>(gp), &doc));
      write_output(take(doc), out);
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitUsage;
}
