#include "fnrep/topology.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "fnrep/families.hpp"

namespace fnrep {
namespace {

template <class Fn>
void for_each_node(const std::vector<Stage>& stages, Fn&& fn) {
  for (const auto& stage : stages) {
    if (const auto* seq = std::get_if<SequentialStage>(&stage)) {
      fn(seq->node);
    } else {
      for (const auto& node : std::get<ParallelStage>(stage).nodes) fn(node);
    }
  }
}

FiniteDomain network_domain(const std::vector<Stage>& stages) {
  if (stages.empty()) throw ConfigurationError("network needs at least one stage");
  if (const auto* seq = std::get_if<SequentialStage>(&stages.front())) return seq->node.fr.domain();
  const auto& par = std::get<ParallelStage>(stages.front());
  if (par.nodes.empty()) throw ConfigurationError("parallel stage needs at least one node");
  return par.nodes.front().fr.domain();
}

// NULL passes through nodes whose family has no rule for it.
Index apply_node(const Node& node, const FiniteDomain& domain, Index value) {
  if (domain.is_null(value) && !node.fr.family().defines_null()) return value;
  return node.fr.family().at(value, node.fr.param());
}

Index arbitrate(const ParallelStage& stage, const FiniteDomain& domain, Index input) {
  const auto& nodes = stage.nodes;
  const Index null = domain.null_index().value_or(std::numeric_limits<Index>::max());

  switch (stage.policy.kind) {
    case ArbitrationPolicy::Kind::FirstNonNull:
      for (const auto& node : nodes) {
        const Index out = apply_node(node, domain, input);
        if (!domain.is_null(out)) return out;
      }
      return domain.has_null() ? null : apply_node(nodes.front(), domain, input);

    case ArbitrationPolicy::Kind::Priority:
      for (const auto& id : stage.policy.order) {
        const auto it = std::find_if(nodes.begin(), nodes.end(),
                                     [&](const Node& n) { return n.id == id; });
        const Index out = apply_node(*it, domain, input);
        if (!domain.is_null(out)) return out;
      }
      return null;

    case ArbitrationPolicy::Kind::BestScore: {
      if (domain.is_null(input)) return null;
      const std::size_t ring = domain.value_count();
      const Node* best = nullptr;
      std::size_t best_distance = std::numeric_limits<std::size_t>::max();
      for (const auto& node : nodes) {
        if (domain.is_null(node.fr.param())) continue;
        const std::size_t d = circular_distance(input, node.fr.param(), ring);
        if (d < best_distance) {
          best = &node;
          best_distance = d;
        }
      }
      return best ? apply_node(*best, domain, input) : null;
    }
  }
  return null;
}

}  // namespace

Network::Network(std::vector<Stage> stages)
    : domain_(network_domain(stages)), stages_(std::move(stages)) {
  std::set<std::string> ids;
  for_each_node(stages_, [&](const Node& node) {
    if (!(node.fr.domain() == domain_))
      throw ConfigurationError("node '" + node.id + "' is over domain '" +
                               node.fr.domain().name() + "', network uses '" + domain_.name() +
                               "'");
    if (!ids.insert(node.id).second)
      throw ConfigurationError("duplicate node id '" + node.id + "'");
  });

  for (const auto& stage : stages_) {
    const auto* par = std::get_if<ParallelStage>(&stage);
    if (!par) continue;
    if (par->nodes.empty()) throw ConfigurationError("parallel stage needs at least one node");
    if (par->policy.kind == ArbitrationPolicy::Kind::BestScore && !domain_.has_null())
      throw ConfigurationError("best-score arbitration needs a domain with null, '" +
                               domain_.name() + "' has none");
    if (par->policy.kind == ArbitrationPolicy::Kind::Priority) {
      std::multiset<std::string> listed(par->policy.order.begin(), par->policy.order.end());
      std::multiset<std::string> present;
      for (const auto& n : par->nodes) present.insert(n.id);
      if (listed != present)
        throw ConfigurationError("priority order must list every node of its stage exactly once");
    }
  }
}

Network make_chain(const std::vector<FunctionRep>& frs) {
  std::vector<Stage> stages;
  stages.reserve(frs.size());
  for (std::size_t k = 0; k < frs.size(); ++k)
    stages.emplace_back(SequentialStage{Node{"n" + std::to_string(k), frs[k]}});
  return Network(std::move(stages));
}

Index run(const Network& net, Index input) {
  const auto& domain = net.domain();
  if (!domain.contains(input))
    throw InputError("input " + std::to_string(input) + " outside domain '" + domain.name() +
                     "'");
  Index value = input;
  for (const auto& stage : net.stages()) {
    if (const auto* seq = std::get_if<SequentialStage>(&stage))
      value = apply_node(seq->node, domain, value);
    else
      value = arbitrate(std::get<ParallelStage>(stage), domain, value);
  }
  return value;
}

std::vector<Index> compose_table(const Network& net) {
  std::vector<Index> table(net.domain().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = run(net, static_cast<Index>(i));
  return table;
}

Network reduce_chain(const Network& net) {
  std::vector<Stage> stages = net.stages();
  std::set<std::string> ids;
  for_each_node(stages, [&](const Node& n) { ids.insert(n.id); });

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
      const auto* first = std::get_if<SequentialStage>(&stages[k]);
      const auto* second = std::get_if<SequentialStage>(&stages[k + 1]);
      if (!first || !second) continue;
      const auto& a = first->node;
      const auto& b = second->node;
      if (!(a.fr.family_ptr() == b.fr.family_ptr() || a.fr.family() == b.fr.family())) continue;
      const auto reducer = find_reducer(a.fr.family(), a.fr.param(), b.fr.param());
      if (!reducer) continue;

      ids.erase(a.id);
      ids.erase(b.id);
      std::string id = a.id + "_" + b.id;
      for (int suffix = 2; ids.count(id); ++suffix) id = a.id + "_" + b.id + "_" + std::to_string(suffix);
      ids.insert(id);

      Node merged{id, FunctionRep(a.fr.family_ptr(), *reducer)};
      stages[k] = SequentialStage{std::move(merged)};
      stages.erase(stages.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      changed = true;
      break;
    }
  }
  return Network(std::move(stages));
}

ClassReport classify_network(const Network& net) { return classify_column(compose_table(net)); }

}  // namespace fnrep
