#pragma once

// Minimal JSON Schema subset used by the shipped schemas: type, required, properties,
// additionalProperties (false only), items, enum and pattern.

#include <json.hpp>

#include <regex>
#include <string>
#include <vector>

namespace maxcover::testing {

inline bool type_matches(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

/// Appends one message per violation to `errors`.
inline void validate_schema(const nlohmann::json& schema, const nlohmann::json& v, const std::string& path,
                            std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    std::vector<std::string> types;
    if (schema["type"].is_array()) types = schema["type"].get<std::vector<std::string>>();
    else types.push_back(schema["type"].get<std::string>());
    bool any = false;
    for (const auto& t : types) any = any || type_matches(v, t);
    if (!any) {
      errors.push_back(path + ": wrong type");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) errors.push_back(path + ": not in enum");
  }
  if (schema.contains("pattern") && v.is_string() &&
      !std::regex_search(v.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
    errors.push_back(path + ": pattern mismatch");
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
    const auto props = schema.value("properties", nlohmann::json::object());
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) validate_schema(props[key], value, path + "." + key, errors);
      else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false)
        errors.push_back(path + ": unexpected " + key);
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate_schema(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
}

}  // namespace maxcover::testing
