#pragma once

#include <string>
#include <vector>

#include "equivote/caps.hpp"
#include "equivote/interchange.hpp"

namespace equivote {

struct InstanceResult {
  std::string name;
  std::string claim;
  Json measured;
  bool pass = false;
};

struct VerificationReport {
  std::string theorem;
  Json params;
  std::vector<InstanceResult> instances;
  Caps caps;
  double wall_seconds = 0;

  bool passed() const;
};

/// Verifier ids in `verify all` order.
const std::vector<std::string>& verifier_ids();

/// Runs one verifier. `params` overrides the embedded defaults, e.g.
/// {"n": "4..16"} or {"p": [2]}. Throws InvalidArgument for unknown ids
/// or parameters.
VerificationReport run_verifier(const std::string& id, const Json& params = Json::object(),
                                const Caps& caps = {});

std::vector<VerificationReport> run_all(const Caps& caps = {});

/// Machine format: deterministic, no timing.
Json report_to_json(const VerificationReport& r);
Json suite_to_json(const std::vector<VerificationReport>& reports);
std::string report_to_human(const VerificationReport& r);

}  // namespace equivote
