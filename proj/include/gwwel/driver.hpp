#pragma once

// JSON-in / JSON-out command layer: everything the CLI and the C API can do,
// expressed as pure functions of a run specification.  Mathematical report
// content is a deterministic function of the spec (timing is reported
// separately and excluded from that guarantee).

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "gwwel/enumerate.hpp"

namespace gww {

using Json = nlohmann::ordered_json;

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 ok, 2 not generic, 3 input error, 4 internal
};

// Dispatches "command": count | curve | move-test | recursion | verify |
// oracle.  Never throws: failures come back as a report with "status" and
// the matching exit code.
RunResult run_command(const Json& spec);
RunResult run_command_text(const std::string& spec_text);

std::string version_string();

// Parsers shared with tests: univariate polynomials in the named variable
// ("3/2*t^2 - t + 1"), and point configurations from their JSON form.
PolyFS parse_unipoly(const FieldDescriptor& f, const std::string& text,
                     char var = 't');
PointConfiguration config_from_json(const FieldDescriptor& f, const Json& points);
Json config_to_json(const PointConfiguration& cfg);

}  // namespace gww
