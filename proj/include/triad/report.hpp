#pragma once

#include <string>

#include "triad/obstruction.hpp"

namespace triad {

// Stable-keyed JSON document for one verification run:
//   {"nu", "grid": {"nodes_per_axis", "epsilon"},
//    "stages": [{"name", "max_residual", "tolerance", "pass"}, ...],
//    "integrals": {"xi"|"bott"|"volume": {"value", "target", "rel_err", ...}},
//    "lambda", "gauge": {"t1", "t2"}, ...}
// Emission is deterministic for identical runs (fixed key order, shortest
// round-trip number formatting, seeded randomness).
std::string emit_report(const ObstructionReport& report);
ObstructionReport parse_report(const std::string& json_text);

bool operator==(const StageResult& a, const StageResult& b);
bool operator==(const IntegralResult& a, const IntegralResult& b);
bool operator==(const ObstructionReport& a, const ObstructionReport& b);

// Human-readable residual table for the text output mode.
std::string format_report_text(const ObstructionReport& report);

}  // namespace triad
