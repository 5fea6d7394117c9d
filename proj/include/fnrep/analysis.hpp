#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fnrep/core.hpp"

namespace fnrep {

/// Associative maps are reversible (bijective); additive maps collide inputs.
enum class FunctionKind { Associative, Additive };

std::string to_string(FunctionKind kind);

struct ClassReport {
  bool constant = false;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  FunctionKind kind = FunctionKind::Additive;
  std::size_t image_size = 0;
  std::size_t information_loss = 0;

  friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

/// Classifies a self-map given as its table column (column[i] = image of i).
ClassReport classify_column(std::span<const Index> column);
ClassReport classify(const FunctionRep& fr);

bool is_constant(const FunctionRep& fr);

/// Why a map has no inverse: two inputs share an output, or some output is
/// never produced.
struct NotInvertible {
  struct Collision {
    Index first;
    Index second;
    Index output;
  };
  struct Missing {
    Index output;
  };
  std::variant<Collision, Missing> witness;

  std::string message() const;
};

/// Either the inverse table (g[f(i)] = i) or the reason there is none.
using Inversion = std::variant<std::vector<Index>, NotInvertible>;

Inversion invert_column(std::span<const Index> column);
Inversion invert(const FunctionRep& fr);

inline bool succeeded(const Inversion& inv) {
  return std::holds_alternative<std::vector<Index>>(inv);
}

/// domain.size() minus the number of distinct outputs.
std::size_t information_loss(const FunctionRep& fr);

/// Table of i -> f(f(i, v1), v2).
std::vector<Index> compose_pair(const ParamFamily& family, Index v1, Index v2);

/// Smallest v' with f(f(i, v1), v2) == f(i, v') for every i, if any.
std::optional<Index> find_reducer(const ParamFamily& family, Index v1, Index v2);

bool produces_emergence(const ParamFamily& family, Index v1, Index v2);

struct CensusReport {
  std::string family;
  std::size_t domain_size = 0;
  std::size_t pairs_total = 0;
  std::size_t pairs_reducible = 0;
  std::size_t pairs_emergent = 0;
  bool self_similar = true;
  std::optional<std::pair<Index, Index>> example_emergent_pair;

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

struct CensusOptions {
  /// Worker threads over v1 rows; 0 or 1 runs inline. Output does not
  /// depend on this value.
  unsigned threads = 1;
};

CensusReport emergence_census(const ParamFamily& family, CensusOptions options = {});

bool is_self_similar(const ParamFamily& family);

enum class Linearity { Yes, No, Unknown };

std::string to_string(Linearity l);

/// For the modular families: whether some slope a and offsets b(v) give
/// f(i, v) = (a*i + b(v)) mod n everywhere. Unknown for families with no
/// ring structure on their indices.
Linearity is_linear(const ParamFamily& family);

}  // namespace fnrep
