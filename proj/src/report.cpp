#include "fnrep/report.hpp"

namespace fnrep {
namespace {

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ", ";
      out += scalar_text(v[k]);
    }
    return out + "]";
  }
  return v.dump();
}

void render(const nlohmann::ordered_json& obj, std::size_t indent, std::string& out) {
  for (const auto& [key, value] : obj.items()) {
    out.append(indent, ' ');
    if (value.is_object()) {
      out += key + ":\n";
      render(value, indent + 2, out);
    } else {
      out += key + ": " + scalar_text(value) + "\n";
    }
  }
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["subject"] = subject;
  doc["body"] = body;
  return doc.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out = preamble;
  if (!body_in_text) return out;
  out += command + ": " + subject + "\n";
  auto shown = body;
  for (const auto& key : json_only) shown.erase(key);
  render(shown, 2, out);
  return out;
}

}  // namespace fnrep
