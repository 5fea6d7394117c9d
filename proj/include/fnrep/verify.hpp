#pragma once

#include <string>
#include <vector>

#include "fnrep/core.hpp"
#include "fnrep/topology.hpp"

namespace fnrep {

struct CheckResult {
  std::string name;
  bool holds = true;
  /// Counterexample or a note on why the check is vacuous.
  std::string detail;
};

struct Verification {
  std::string subject;
  std::vector<CheckResult> checks;

  bool all_hold() const;
};

/// Exhaustive checks of the structural properties every family must satisfy:
/// information and knowledge criteria, inversion, information loss,
/// linearity vs. self-similarity, chain reduction and connection behaviour.
/// Cost is O(n^4) in the domain size.
Verification verify_family(const ParamFamily& family, unsigned threads = 1);

/// Checks that a network's reduction is behaviour-preserving and that run
/// agrees with its composed table.
Verification verify_network(const std::string& name, const Network& net);

}  // namespace fnrep
