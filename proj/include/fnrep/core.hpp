#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fnrep {

/// Element of a finite domain, always in [0, size).
using Index = std::uint32_t;

/// Raised when an argument lies outside the domain an operation expects.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a family, domain or network cannot be built from its parameters.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An indexed finite value set 0..size-1, optionally with one element
/// reserved as NULL ("nothing").
class FiniteDomain {
 public:
  FiniteDomain(std::string name, std::size_t size,
               std::optional<Index> null_index = std::nullopt);

  /// A domain of `value_count` ordinary values plus a trailing NULL element.
  static FiniteDomain with_null(std::string name, std::size_t value_count);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }
  std::optional<Index> null_index() const noexcept { return null_index_; }
  bool has_null() const noexcept { return null_index_.has_value(); }
  bool is_null(Index i) const noexcept { return null_index_ && *null_index_ == i; }
  bool contains(std::size_t i) const noexcept { return i < size_; }

  /// Number of non-NULL elements.
  std::size_t value_count() const noexcept { return size_ - (has_null() ? 1 : 0); }

  friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;

 private:
  std::string name_;
  std::size_t size_;
  std::optional<Index> null_index_;
};

/// Probability vector over a FiniteDomain. Entries are non-negative and sum
/// to one within 1e-9.
class Distribution {
 public:
  static constexpr double kNormalizationTolerance = 1e-9;

  Distribution(FiniteDomain domain, std::vector<double> probs);

  static Distribution uniform(const FiniteDomain& domain);
  static Distribution point_mass(const FiniteDomain& domain, Index at);

  const FiniteDomain& domain() const noexcept { return domain_; }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](Index i) const { return probs_.at(i); }

 private:
  FiniteDomain domain_;
  std::vector<double> probs_;
};

// Rules for the built-in families. Integer parameters only; the domain
// supplies n.
struct AffineMod {
  std::int64_t a = 1;
  friend bool operator==(const AffineMod&, const AffineMod&) = default;
};
struct MulMod {
  friend bool operator==(const MulMod&, const MulMod&) = default;
};
struct PolyMod {
  std::int64_t e = 2;
  friend bool operator==(const PolyMod&, const PolyMod&) = default;
};
struct ThresholdMemory {
  std::int64_t theta = 0;
  friend bool operator==(const ThresholdMemory&, const ThresholdMemory&) = default;
};
struct QuantizedNeuron {
  std::int64_t s = 1;
  friend bool operator==(const QuantizedNeuron&, const QuantizedNeuron&) = default;
};
struct HybridMemory {
  std::int64_t theta = 0;
  std::int64_t s = 1;
  friend bool operator==(const HybridMemory&, const HybridMemory&) = default;
};
/// Explicit table; rows[i][v] = f(i, v).
struct ExplicitTable {
  std::vector<std::vector<std::int64_t>> rows;
  friend bool operator==(const ExplicitTable&, const ExplicitTable&) = default;
};

using FamilyRule = std::variant<AffineMod, MulMod, PolyMod, ThresholdMemory,
                                QuantizedNeuron, HybridMemory, ExplicitTable>;

/// Variant spelling used by the DSL and reports ("affine_mod", "table", ...).
std::string rule_name(const FamilyRule& rule);

/// A total parametrized function f: D x D -> D, materialized as a table.
class ParamFamily {
 public:
  /// `table` is column-major: table[v * n + i] = f(i, v). Prefer make_family.
  ParamFamily(std::string name, FiniteDomain domain, FamilyRule rule,
              std::vector<Index> table);

  const std::string& name() const noexcept { return name_; }
  const FiniteDomain& domain() const noexcept { return domain_; }
  const FamilyRule& rule() const noexcept { return rule_; }
  std::size_t size() const noexcept { return domain_.size(); }

  Index at(Index input, Index param) const noexcept {
    return table_[static_cast<std::size_t>(param) * domain_.size() + input];
  }

  /// f(., v) for every input.
  std::span<const Index> column(Index param) const noexcept {
    return {table_.data() + static_cast<std::size_t>(param) * domain_.size(),
            domain_.size()};
  }

  /// Whether the family has its own rule for a NULL input. Families over
  /// domains without NULL never see one.
  bool defines_null() const noexcept;

  friend bool operator==(const ParamFamily& a, const ParamFamily& b) {
    return a.name_ == b.name_ && a.domain_ == b.domain_ && a.rule_ == b.rule_ &&
           a.table_ == b.table_;
  }

 private:
  std::string name_;
  FiniteDomain domain_;
  FamilyRule rule_;
  std::vector<Index> table_;
};

using FamilyPtr = std::shared_ptr<const ParamFamily>;

/// A family with its parameter fixed: the stored value is both the memory
/// and the program.
class FunctionRep {
 public:
  FunctionRep(FamilyPtr family, Index param);

  const ParamFamily& family() const noexcept { return *family_; }
  const FamilyPtr& family_ptr() const noexcept { return family_; }
  Index param() const noexcept { return param_; }
  const FiniteDomain& domain() const noexcept { return family_->domain(); }
  std::span<const Index> column() const noexcept { return family_->column(param_); }

  friend bool operator==(const FunctionRep& a, const FunctionRep& b) {
    return a.param_ == b.param_ &&
           (a.family_ == b.family_ || *a.family_ == *b.family_);
  }

 private:
  FamilyPtr family_;
  Index param_;
};

Index apply(const FunctionRep& fr, Index input);

/// Sorted set of outputs over every input.
std::vector<Index> image(const FunctionRep& fr);
std::vector<Index> image_of(std::span<const Index> column);

Distribution pushforward(const FunctionRep& fr, const Distribution& input);

/// Shannon entropy in bits; zero-probability terms contribute nothing.
double entropy(const Distribution& dist);

/// True iff more than one entry is strictly positive.
bool contains_information(const Distribution& dist);

/// True iff the FR maps its inputs to more than one output.
bool is_knowledge(const FunctionRep& fr);

}  // namespace fnrep
