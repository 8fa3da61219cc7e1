#include "equivote/report.hpp"

#include <sstream>

#include "equivote/analysis.hpp"
#include "equivote/error.hpp"

namespace equivote {

namespace {

Json tri(const TriResult& r) { return {{"verdict", to_string(r.verdict)}, {"method", r.method}}; }

Json unknown(const Error& e) {
  return {{"verdict", "unknown"}, {"method", "none"}, {"note", e.what()}};
}

bool soft(const Error& e) {
  return e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::Overflow;
}

Json rationals(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

}  // namespace

Json analyze(const RuleDocument& doc, const AnalyzeOptions& options, const Caps& caps) {
  const auto& rule = doc.rule;
  const std::size_t n = rule.degree();
  Json out;
  out["format_version"] = kFormatVersion;
  out["kind"] = "analysis";
  out["rule"] = rule_to_json(doc);
  out["n"] = n;
  out["caps"] = caps_to_json(caps);

  std::optional<Verdict> equitable;
  if (options.equity || options.k >= 2) {
    try {
      auto eq = is_equitable(rule, caps);
      equitable = eq.verdict;
      out["equitable"] = tri(eq);
    } catch (const Error& e) {
      if (!soft(e)) throw;
      out["equitable"] = unknown(e);
    }
    Json aut;
    if (n <= caps.permutation_n && n <= caps.profile_n) {
      try {
        auto g = automorphism_group(rule, AutMethod::Exhaustive, caps);
        aut = {{"value", *g.group.order()}, {"method", g.method}};
      } catch (const Error& e) {
        if (!soft(e)) throw;
        aut = {{"value", nullptr}, {"method", "none"}, {"note", e.what()}};
      }
    } else {
      aut = {{"value", nullptr}, {"method", "none"}, {"note", "exhaustive scan exceeds caps"}};
    }
    out["aut_order"] = std::move(aut);
  }
  if (options.k >= 2) {
    if (options.k > n) fail(ErrorCode::InvalidArgument, "k exceeds the number of voters");
    Json ks = Json::array();
    for (std::size_t k = 2; k <= options.k; ++k) {
      Json entry;
      try {
        entry = tri(is_k_equitable(rule, k, caps));
      } catch (const Error& e) {
        if (!soft(e)) throw;
        entry = unknown(e);
      }
      entry["k"] = k;
      ks.push_back(std::move(entry));
    }
    out["k_equity"] = std::move(ks);
    out["k_equity_max_checked"] = options.k;
  }
  if (options.min_coalition) {
    try {
      auto mc = min_winning_coalitions(rule, caps);
      Json w = Json::array();
      for (const auto& c : mc.witnesses) w.push_back(coalition_to_json(c));
      out["min_coalition"] = {{"size", mc.size},
                              {"exact", mc.exact},
                              {"witness_count", mc.witness_count},
                              {"witnesses_truncated", mc.witnesses_truncated},
                              {"subsets_tested", mc.subsets_tested},
                              {"method", mc.method},
                              {"witnesses", std::move(w)}};
      if (equitable == Verdict::True && mc.exact)
        out["sqrt_bound_holds"] = mc.size * mc.size >= n;
    } catch (const Error& e) {
      if (!soft(e)) throw;
      out["min_coalition"] = unknown(e);
    }
  }
  if (options.pivotality) {
    Json piv;
    for (auto [dist, key] : {std::pair{Distribution::BinaryUniform, "binary_uniform"},
                             std::pair{Distribution::TernaryUniform, "ternary_uniform"}}) {
      try {
        piv[key] = rationals(pivotality(rule, dist, caps));
      } catch (const Error& e) {
        if (!soft(e)) throw;
        piv[key] = unknown(e);
      }
    }
    out["pivotality"] = std::move(piv);
  }
  return out;
}

std::string analysis_to_human(const Json& r) {
  std::ostringstream os;
  os << "rule: " << r["rule"]["type"].get<std::string>() << " on " << r["n"] << " voters\n";
  auto verdict = [](const Json& j) {
    std::string s = j["verdict"].get<std::string>() + " (" + j["method"].get<std::string>() + ")";
    if (j.contains("note")) s += " - " + j["note"].get<std::string>();
    return s;
  };
  if (r.contains("equitable")) os << "equitable: " << verdict(r["equitable"]) << "\n";
  if (r.contains("aut_order")) {
    const auto& a = r["aut_order"];
    os << "|Aut|: " << (a["value"].is_null() ? std::string("unknown") : a["value"].dump()) << "\n";
  }
  if (r.contains("k_equity"))
    for (const auto& e : r["k_equity"]) os << e["k"] << "-equitable: " << verdict(e) << "\n";
  if (r.contains("min_coalition")) {
    const auto& m = r["min_coalition"];
    if (m.contains("size")) {
      os << "min winning coalition: " << m["size"] << (m["exact"].get<bool>() ? "" : " (lower bound)")
         << ", " << m["witness_count"] << " of that size (" << m["method"].get<std::string>()
         << ")\n";
      std::size_t shown = 0;
      for (const auto& w : m["witnesses"]) {
        if (shown++ == 10) {
          os << "  ...\n";
          break;
        }
        os << "  " << w.dump() << "\n";
      }
    } else {
      os << "min winning coalition: " << verdict(m) << "\n";
    }
  }
  if (r.contains("pivotality"))
    for (const auto& [key, v] : r["pivotality"].items())
      os << "pivotality " << key << ": " << (v.is_array() ? v.dump() : verdict(v)) << "\n";
  return os.str();
}

}  // namespace equivote
