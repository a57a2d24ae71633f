#pragma once

#include <string>

#include <json.hpp>

namespace stochmep {

/// Indented JSON with arrays of scalars kept on one line.
inline void pretty_into(const nlohmann::ordered_json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  auto scalar_array = [](const nlohmann::ordered_json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + nlohmann::ordered_json(key).dump() + ": ";
      pretty_into(value, indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty_into(j[i], indent + 2, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_array() && !j.empty()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

inline std::string pretty(const nlohmann::ordered_json& j) {
  std::string out;
  pretty_into(j, 0, out);
  return out + "\n";
}

}  // namespace stochmep
