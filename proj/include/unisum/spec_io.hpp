#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "unisum/core.hpp"

namespace unisum {

/// Malformed document: unknown kinds, missing fields, out-of-range scalars.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builds the operator described by a construction node. Schema problems
/// throw SchemaError; well-formed documents describing invalid constructions
/// propagate the library's invalid_argument (with the violated rule).
OperatorHandle build_operator(const nlohmann::json& node);

/// Canonical re-emission of a construction document: validated fields only,
/// canonical key order. Fixed point of itself, so parse -> serialize ->
/// parse is the identity on normalized documents.
nlohmann::json normalize_spec(const nlohmann::json& node);

nlohmann::json parse_spec_text(const std::string& text);
nlohmann::json load_spec_file(const std::string& path);

}  // namespace unisum
