#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fnrep/analysis.hpp"
#include "fnrep/core.hpp"

namespace fnrep {

/// Raised when a network is assembled inconsistently.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Node {
  std::string id;
  FunctionRep fr;
  /// Name of the FR this node instantiates in a model; empty when the node
  /// was built programmatically.
  std::string ref = {};
};

/// How a parallel stage picks one output among its nodes.
struct ArbitrationPolicy {
  enum class Kind { FirstNonNull, BestScore, Priority };
  Kind kind = Kind::FirstNonNull;
  /// Node ids, highest priority first. Only used by Priority.
  std::vector<std::string> order = {};

  static ArbitrationPolicy first_non_null() { return {Kind::FirstNonNull, {}}; }
  static ArbitrationPolicy best_score() { return {Kind::BestScore, {}}; }
  static ArbitrationPolicy priority(std::vector<std::string> order) {
    return {Kind::Priority, std::move(order)};
  }

  friend bool operator==(const ArbitrationPolicy&, const ArbitrationPolicy&) = default;
};

struct SequentialStage {
  Node node;
};

struct ParallelStage {
  std::vector<Node> nodes;
  ArbitrationPolicy policy;
};

using Stage = std::variant<SequentialStage, ParallelStage>;

/// A pipeline of stages over one shared domain. Immutable once built.
class Network {
 public:
  explicit Network(std::vector<Stage> stages);

  const FiniteDomain& domain() const noexcept { return domain_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }
  std::size_t stage_count() const noexcept { return stages_.size(); }

 private:
  FiniteDomain domain_;
  std::vector<Stage> stages_;
};

/// Convenience: a pure sequential chain of the given FRs, ids n0, n1, ...
Network make_chain(const std::vector<FunctionRep>& frs);

Index run(const Network& net, Index input);

/// entry i = run(net, i).
std::vector<Index> compose_table(const Network& net);

/// Merges adjacent sequential stages of the same family wherever a reducer
/// exists, until no merge applies. Behaviour is preserved exactly.
Network reduce_chain(const Network& net);

ClassReport classify_network(const Network& net);

}  // namespace fnrep
