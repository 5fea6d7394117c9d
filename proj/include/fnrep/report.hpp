#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fnrep {

/// Output of one CLI command. Keys keep insertion order so both renderings
/// are byte-stable.
struct Report {
  std::string command;
  std::string subject;
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
  /// Printed verbatim before the body in text mode.
  std::string preamble = {};
  bool body_in_text = true;
  /// Top-level body keys left out of the text rendering (already in the preamble).
  std::vector<std::string> json_only = {};

  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace fnrep
