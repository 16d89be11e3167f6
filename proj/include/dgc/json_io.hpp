#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dgc/core.hpp"

namespace dgc {

using Json = nlohmann::ordered_json;

// Two-space indentation with arrays of scalars kept on one line.
std::string dump_json(const Json& j);

// Reads a file as JSON; missing files and syntax errors raise InputError.
Json load_json(const std::string& path);

// Malformed documents raise InputError. Out-of-range ids and incompatible
// entries are recorded in DoubleGroupoid::defects instead.
DoubleGroupoid double_groupoid_from_json(const Json& j);
Json double_groupoid_to_json(const DoubleGroupoid& dg);

// Bundle with action. Arrows missing from an action list act as identity.
DoubleAction action_from_json(const Json& j, const DoubleGroupoid& dg);
Json action_to_json(const DoubleAction& a, const DoubleGroupoid& dg);

// Checks "schema": 1 and the "kind" field; raises InputError otherwise.
void check_header(const Json& j, const std::string& kind);

}  // namespace dgc
