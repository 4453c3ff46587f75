#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "symq/boolean_function.hpp"

namespace symq {

/// A function as read from disk: either a full truth table or a symmetric profile.
using FunctionData = std::variant<BooleanFunction, SymmetricProfile>;

/// {"n": int, "kind": "table"|"symmetric", "values": string over {0,1,*}}
nlohmann::json function_to_json(const BooleanFunction& f);
nlohmann::json function_to_json(const SymmetricProfile& f);
FunctionData function_from_json(const nlohmann::json& j);

FunctionData load_function(const std::filesystem::path& path);

int arity_of(const FunctionData& data);

/// Shortest text form with 9 significant digits.
std::string format_number(double v);
/// JSON number rounded to 9 significant digits; null for non-finite values.
nlohmann::json json_number(double v);

/// Truth table for the data, expanding profiles; throws for arities above the table cap.
BooleanFunction as_table(const FunctionData& data);

}  // namespace symq
