#pragma once

#include <json.hpp>

#include "mzv/genfun.hpp"

namespace mzv {

// One JSON object per check:
// {"relation": ..., "inputs": {...}, "lambda": "p/q", "lhs": {"value","err"},
//  "rhs": {...}, "abs_diff": ..., "pass": ..., "params": {...}}
// Field order is fixed so reruns are byte-identical.
nlohmann::ordered_json report_to_json(const RelationReport& r);

// Single human-readable line.
std::string report_to_line(const RelationReport& r);

std::string tail_mode_name(EvalParams::TailMode m);

}  // namespace mzv
