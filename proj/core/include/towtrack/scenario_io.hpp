#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "towtrack/harness.hpp"

namespace towtrack {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a scenario from JSON. Unknown keys are rejected, missing keys fall
/// back to the stock scenario's value for that field. Throws ScenarioError
/// with the offending field on malformed input.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(std::istream& in, const std::string& origin);

/// Serializes a scenario to JSON (the inverse of parse_scenario).
std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace towtrack
