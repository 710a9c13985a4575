#pragma once

#include <string>
#include <vector>

#include "tether/cover.hpp"
#include "tether/planner.hpp"

namespace tether {

// Deterministic text serialization of a built complex: a human-readable
// per-layer listing followed by the machine replay section. Identical builds
// produce byte-identical dumps.
std::string dump_complex(const CoverComplex& complex, const std::string& env_hash);

// Reconstructs a complex from its dump against a freshly prepared base
// triangulation. kParseError on malformed input or hash/length mismatch.
CoverComplex load_complex(const std::string& text, const ValidatedEnvironment& env,
                          double effective_length);

// Build statistics block written next to the dump.
struct BuildStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::size_t layer_count = 0;
  double build_time_s = 0.0;
  bool anchor_snapped = false;
};
std::string format_build_stats(const BuildStats& stats);

// Structured plan report (JSON): ranked entries with signatures, lengths and
// vertex lists.
std::string plan_report_json(const PlanQuery& query, const std::vector<PlanResult>& results);
struct PlanReport {
  PlanQuery query;
  std::vector<PlanResult> results;
};
PlanReport parse_plan_report(const std::string& text);

}  // namespace tether
