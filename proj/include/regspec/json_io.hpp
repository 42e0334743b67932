#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "regspec/engine.hpp"
#include "regspec/spec_form.hpp"
#include "regspec/value.hpp"

namespace regspec {

using Json = nlohmann::json;

// Value interchange: JSON objects are maps whose keys are `ns/name` strings
// (no leading colon); strings starting with `:` are keywords; integers stay
// Int, everything else numeric is Float. A plain string that starts with `:`
// cannot be represented.

Json to_json(const Value& value);
/// Throws Error(ParseError) for keys or `:`-strings that are not keywords.
Value value_from_json(const Json& json);

/// Parses a JSON document into a Value. Throws Error(ParseError).
Value parse_value(std::string_view text);
std::string dump_value(const Value& value);

Json to_json(const PathStep& step);
Json to_json(const Path& path);
Json to_json(const Problem& problem);

// Ruleset spec nodes. A bare string `"::k"` is shorthand for a ref. Keywords
// written as `::name` resolve against `ns`.

SpecPtr form_from_json(const Json& node, std::string_view ns);
Json to_json(const SpecForm& form);

}  // namespace regspec
