#include "symq/function_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace symq {

nlohmann::json function_to_json(const BooleanFunction& f) {
  return {{"n", f.arity()}, {"kind", "table"}, {"values", f.to_string()}};
}

nlohmann::json function_to_json(const SymmetricProfile& f) {
  return {{"n", f.arity()}, {"kind", "symmetric"}, {"values", f.to_string()}};
}

FunctionData function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("function file must hold a JSON object");
  int n = 0;
  std::string kind;
  std::string values;
  try {
    n = j.at("n").get<int>();
    kind = j.at("kind").get<std::string>();
    values = j.at("values").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed function record: " + std::string(e.what()));
  }
  if (kind == "table") {
    if (n < 0 || n > kMaxTableArity) throw std::invalid_argument("table arity out of range");
    if (values.size() != (std::size_t{1} << n)) throw std::invalid_argument("table values must have length 2^n");
    return BooleanFunction::parse(n, values);
  }
  if (kind == "symmetric") {
    if (n < 0 || values.size() != static_cast<std::size_t>(n) + 1)
      throw std::invalid_argument("symmetric values must have length n+1");
    return SymmetricProfile::parse(values);
  }
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

FunctionData load_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open function file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed function file: " + std::string(e.what()));
  }
  return function_from_json(j);
}

int arity_of(const FunctionData& data) {
  return std::visit([](const auto& f) { return f.arity(); }, data);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

BooleanFunction as_table(const FunctionData& data) {
  if (const auto* table = std::get_if<BooleanFunction>(&data)) return *table;
  return BooleanFunction::from_profile(std::get<SymmetricProfile>(data));
}

}  // namespace symq
