#include "fnrep/core.hpp"

#include <algorithm>
#include <cmath>

namespace fnrep {

FiniteDomain::FiniteDomain(std::string name, std::size_t size,
                           std::optional<Index> null_index)
    : name_(std::move(name)), size_(size), null_index_(null_index) {
  if (size_ == 0) throw ConstructionError("domain '" + name_ + "' must have size >= 1");
  if (null_index_ && *null_index_ >= size_)
    throw ConstructionError("domain '" + name_ + "': null index out of range");
}

FiniteDomain FiniteDomain::with_null(std::string name, std::size_t value_count) {
  return FiniteDomain(std::move(name), value_count + 1, static_cast<Index>(value_count));
}

Distribution::Distribution(FiniteDomain domain, std::vector<double> probs)
    : domain_(std::move(domain)), probs_(std::move(probs)) {
  if (probs_.size() != domain_.size())
    throw InputError("distribution length does not match domain '" + domain_.name() + "'");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw InputError("distribution has a negative or NaN entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw InputError("distribution does not sum to 1");
}

Distribution Distribution::uniform(const FiniteDomain& domain) {
  return Distribution(domain, std::vector<double>(domain.size(),
                                                  1.0 / static_cast<double>(domain.size())));
}

Distribution Distribution::point_mass(const FiniteDomain& domain, Index at) {
  if (!domain.contains(at)) throw InputError("point mass outside domain");
  std::vector<double> probs(domain.size(), 0.0);
  probs[at] = 1.0;
  return Distribution(domain, std::move(probs));
}

std::string rule_name(const FamilyRule& rule) {
  struct Namer {
    std::string operator()(const AffineMod&) const { return "affine_mod"; }
    std::string operator()(const MulMod&) const { return "mul_mod"; }
    std::string operator()(const PolyMod&) const { return "poly_mod"; }
    std::string operator()(const ThresholdMemory&) const { return "threshold_memory"; }
    std::string operator()(const QuantizedNeuron&) const { return "quantized_neuron"; }
    std::string operator()(const HybridMemory&) const { return "hybrid_memory"; }
    std::string operator()(const ExplicitTable&) const { return "table"; }
  };
  return std::visit(Namer{}, rule);
}

ParamFamily::ParamFamily(std::string name, FiniteDomain domain, FamilyRule rule,
                         std::vector<Index> table)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      rule_(std::move(rule)),
      table_(std::move(table)) {
  const std::size_t n = domain_.size();
  if (table_.size() != n * n)
    throw ConstructionError("family '" + name_ + "': table is not size x size");
  for (Index out : table_)
    if (out >= n) throw ConstructionError("family '" + name_ + "': table entry out of range");
}

bool ParamFamily::defines_null() const noexcept {
  return std::holds_alternative<ThresholdMemory>(rule_) ||
         std::holds_alternative<HybridMemory>(rule_) ||
         std::holds_alternative<ExplicitTable>(rule_);
}

FunctionRep::FunctionRep(FamilyPtr family, Index param)
    : family_(std::move(family)), param_(param) {
  if (!family_) throw ConstructionError("function-representation without a family");
  if (!family_->domain().contains(param_))
    throw InputError("parameter " + std::to_string(param_) + " outside domain of family '" +
                     family_->name() + "'");
}

Index apply(const FunctionRep& fr, Index input) {
  if (!fr.domain().contains(input))
    throw InputError("input " + std::to_string(input) + " outside domain '" +
                     fr.domain().name() + "'");
  return fr.family().at(input, fr.param());
}

std::vector<Index> image_of(std::span<const Index> column) {
  std::vector<Index> out(column.begin(), column.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Index> image(const FunctionRep& fr) { return image_of(fr.column()); }

Distribution pushforward(const FunctionRep& fr, const Distribution& input) {
  if (!(input.domain() == fr.domain()))
    throw InputError("distribution domain '" + input.domain().name() +
                     "' does not match family domain '" + fr.domain().name() + "'");
  std::vector<double> out(fr.domain().size(), 0.0);
  const auto col = fr.column();
  const auto probs = input.probs();
  for (std::size_t i = 0; i < col.size(); ++i) out[col[i]] += probs[i];
  return Distribution(fr.domain(), std::move(out));
}

double entropy(const Distribution& dist) {
  // Normalizing by the actual total makes a point mass exactly zero even when
  // its probability summed to 1 - eps.
  double total = 0.0, weighted = 0.0;
  for (double p : dist.probs())
    if (p > 0.0) {
      total += p;
      weighted += p * std::log2(p);
    }
  const double h = std::log2(total) - weighted / total;
  return h > 0.0 ? h : 0.0;
}

bool contains_information(const Distribution& dist) {
  const auto probs = dist.probs();
  return std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; }) > 1;
}

bool is_knowledge(const FunctionRep& fr) { return image(fr).size() > 1; }

}  // namespace fnrep
