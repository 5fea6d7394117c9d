#include "fnrep/verify.hpp"

#include <algorithm>

#include "fnrep/analysis.hpp"

namespace fnrep {
namespace {

std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  // Records the first counterexample only.
  void expect(bool ok, const std::string& detail) {
    if (ok || !result_.holds) return;
    result_.holds = false;
    result_.detail = detail;
  }
  void note(std::string detail) {
    if (result_.holds) result_.detail = std::move(detail);
  }
  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

}  // namespace

bool Verification::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.holds; });
}

Verification verify_family(const ParamFamily& family, unsigned threads) {
  const std::size_t n = family.size();
  const auto fam = std::make_shared<const ParamFamily>(family);
  const auto uniform = Distribution::uniform(family.domain());

  Check information("information_iff_multivalued");
  Check knowledge("knowledge_iff_nonconstant");
  Check associative("associative_iff_invertible");
  Check loss("additive_iff_information_loss");
  std::vector<ClassReport> classes(n);

  for (std::size_t v = 0; v < n; ++v) {
    const FunctionRep fr(fam, static_cast<Index>(v));
    const std::string at = "v=" + std::to_string(v);
    const auto img = image(fr).size();
    const auto out = pushforward(fr, uniform);
    information.expect((entropy(out) > 1e-12) == (img > 1), at + ": entropy disagrees with image size");
    information.expect(contains_information(out) == (img > 1),
                       at + ": structural information test disagrees with image size");
    knowledge.expect(is_knowledge(fr) == !is_constant(fr), at + ": knowledge disagrees with constancy");

    classes[v] = classify(fr);
    const auto inv = invert(fr);
    const bool assoc = classes[v].kind == FunctionKind::Associative;
    associative.expect(assoc == succeeded(inv), at + ": classification disagrees with invertibility");
    if (const auto* g = std::get_if<std::vector<Index>>(&inv)) {
      const auto col = fr.column();
      for (std::size_t i = 0; i < n; ++i)
        associative.expect((*g)[col[i]] == i, at + ": inverse does not undo input " + std::to_string(i));
    }
    loss.expect((information_loss(fr) > 0) == !assoc, at + ": information loss disagrees with kind");
  }

  Check linear("linear_implies_self_similar");
  const auto linearity = is_linear(family);
  const auto census = emergence_census(family, {threads});
  if (linearity == Linearity::Yes) {
    linear.expect(census.self_similar,
                  "linear but composition " + pair_text(census.example_emergent_pair->first,
                                                        census.example_emergent_pair->second) +
                      " has no reducer");
  } else {
    linear.note("vacuous (linear: " + to_string(linearity) + ")");
  }

  Check collapse("chain_reduction_exact");
  Check monotone("connection_image_monotone");
  Check bijective("connection_bijectivity");
  for (std::size_t v1 = 0; v1 < n; ++v1) {
    for (std::size_t v2 = 0; v2 < n; ++v2) {
      const auto p = pair_text(v1, v2);
      const FunctionRep a(fam, static_cast<Index>(v1));
      const FunctionRep b(fam, static_cast<Index>(v2));
      const auto composed = compose_pair(family, a.param(), b.param());
      const auto reducer = find_reducer(family, a.param(), b.param());
      if (reducer) {
        const auto col = family.column(*reducer);
        collapse.expect(std::equal(col.begin(), col.end(), composed.begin()),
                        p + ": reducer table differs from composition");
      }
      const Network chain = make_chain({a, b});
      const Network reduced = reduce_chain(chain);
      collapse.expect(compose_table(reduced) == composed, p + ": reduction changed behaviour");
      collapse.expect(reduced.stage_count() == (reducer ? 1u : 2u),
                      p + ": reduction left " + std::to_string(reduced.stage_count()) + " stages");

      const auto cls = classify_column(composed);
      monotone.expect(cls.image_size <= std::min(classes[v1].image_size, classes[v2].image_size),
                      p + ": composed image larger than a stage image");
      bijective.expect(cls.bijective == (classes[v1].bijective && classes[v2].bijective),
                       p + ": composed bijectivity disagrees with stage bijectivity");
    }
  }

  Verification out{family.name(), {}};
  for (auto* c : {&information, &knowledge, &associative, &loss, &linear, &collapse, &monotone,
                  &bijective})
    out.checks.push_back(c->done());
  return out;
}

Verification verify_network(const std::string& name, const Network& net) {
  Check agree("run_matches_composed_table");
  Check reduce("reduction_equivalent");
  const auto table = compose_table(net);
  for (std::size_t i = 0; i < table.size(); ++i)
    agree.expect(run(net, static_cast<Index>(i)) == table[i], "input " + std::to_string(i));
  const auto reduced = reduce_chain(net);
  reduce.expect(compose_table(reduced) == table, "reduced table differs");
  reduce.note(std::to_string(net.stage_count()) + " -> " + std::to_string(reduced.stage_count()) +
              " stages");
  return {name, {agree.done(), reduce.done()}};
}

}  // namespace fnrep
