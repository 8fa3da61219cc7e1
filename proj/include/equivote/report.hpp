#pragma once

#include <cstddef>

#include "equivote/caps.hpp"
#include "equivote/interchange.hpp"

namespace equivote {

struct AnalyzeOptions {
  bool equity = false;
  std::size_t k = 0;  // check 2..k equity when >= 2
  bool min_coalition = false;
  bool pivotality = false;
};

/// Runs the requested analyses. Cap overruns become explicit "unknown"
/// entries with a note instead of errors.
Json analyze(const RuleDocument& doc, const AnalyzeOptions& options, const Caps& caps = {});

std::string analysis_to_human(const Json& report);

}  // namespace equivote
