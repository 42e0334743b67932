#pragma once

#include "regspec/cnl.hpp"
#include "regspec/json_io.hpp"

namespace regspec {

// JSON shapes shared by the CLI and the HTTP service.

Json to_json(const cnl::Element& element, std::string_view ns);
Json to_json(const cnl::Document& doc);
Json to_json(const cnl::Finding& finding);
Json to_json(const cnl::Trace& trace);
/// `{"kind", "line", "expected", "message"}`.
Json to_json(const cnl::ParseError& error);

Json problems_to_json(const std::vector<Problem>& problems);
Json findings_to_json(const std::vector<cnl::Finding>& findings);
Json traces_to_json(const std::vector<cnl::Trace>& traces);

}  // namespace regspec
