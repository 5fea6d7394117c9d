#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnrep/core.hpp"
#include "fnrep/topology.hpp"

namespace fnrep::dsl {

// Line-oriented model language (.frd):
//
//   domain <name> size <n> [null]
//   family <name> over <domain> = <variant>(<k>=<v>, ...)
//   family <name> over <domain> = table [r00 r01 ...; r10 ...]
//   fr <name> = <family>(<v>)
//   net <name> = <stage> -> <stage> -> ...
//
// A stage is an FR name or `[<fr> | <fr> ...] @first|@best|@priority(<fr>, ...)`.
// `#` starts a comment. References may point forward.

/// Largest domain (including NULL) the language accepts.
inline constexpr std::size_t kMaxDomainSize = 4096;

struct Model {
  std::map<std::string, FiniteDomain> domains;
  std::map<std::string, FamilyPtr> families;
  std::map<std::string, FunctionRep> frs;
  std::map<std::string, Network> nets;

  bool empty() const noexcept {
    return domains.empty() && families.empty() && frs.empty() && nets.empty();
  }
};

/// Same names, same definitions, same references. Ignores object identity.
bool structurally_equal(const Model& a, const Model& b);

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
};

std::string format(const Diagnostic& d, std::string_view source_name = {});

struct ParseResult {
  std::optional<Model> model;  // present iff there are no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return model.has_value(); }
};

ParseResult parse_text(std::string_view source);

/// Canonical text: domains, families, frs, nets, each sorted by name.
std::string serialize(const Model& model);

// Single-statement renderers, shared with the CLI.
std::string serialize_family(const std::string& name, const ParamFamily& family);
std::string serialize_fr(const std::string& name, const FunctionRep& fr);
/// Nodes are written by their `ref`, falling back to their id.
std::string serialize_net(const std::string& name, const Network& net);

}  // namespace fnrep::dsl
