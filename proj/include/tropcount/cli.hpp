#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropcount/engines.hpp"

namespace tropcount {

/// Malformed conditions text; `position` is the 0-based character offset of
/// the offending token.
struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

/// Outward normal of a named side: bottom (0,-1), left (-1,0), diag (1,1).
LatticeVector side_normal_of(const std::string& name);

/// Comma separated tokens: `int*K`, `pair@P`, `bnd:SIDE:M`, `pairbnd:SIDE`.
/// Non-pair tokens keep their order; a pair is then inserted at 1-based
/// position P among the interior conditions.
PointConditionType parse_conditions(const std::string& text);

/// Inverse of parse_conditions up to grouping of consecutive interior points.
std::string format_conditions(const PointConditionType& type);

/// Error object for machine consumption: {"error": {"type", "message", ...}}.
nlohmann::json error_json(const std::exception& e);

/// The command-line program. Writes the document to `out`, diagnostics to
/// `err`; returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropcount
