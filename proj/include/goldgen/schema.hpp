#pragma once

// Validator for the subset of JSON Schema used by the run configuration:
// type, enum, anyOf, $ref (local "#/..." pointers), properties, required,
// additionalProperties (boolean), items, minItems, maxItems, minimum,
// maximum, exclusiveMinimum, minLength.

#include <string>
#include <vector>

#include <json.hpp>

namespace goldgen {

struct SchemaViolation {
  std::string where;  // JSON pointer into the instance
  std::string what;
};

std::vector<SchemaViolation> validate_schema(const nlohmann::json& instance,
                                             const nlohmann::json& schema);

// The run-config schema compiled into the binary.
const nlohmann::json& run_config_schema();

}  // namespace goldgen
