#pragma once

#include <string>
#include <vector>

#include "fnrep/core.hpp"

namespace fnrep {

/// Which built-in rule to instantiate, and over which domain.
///
/// Modular rules (affine_mod, mul_mod, poly_mod) and quantized_neuron need a
/// domain without NULL and use n = domain.size(). The memory rules
/// (threshold_memory, hybrid_memory) need a domain with NULL as its last
/// element and use n = domain.size() - 1. Tables accept any domain.
struct FamilySpec {
  FamilyRule rule;
  FiniteDomain domain;
};

FamilyPtr make_family(const FamilySpec& spec, std::string name = {});

struct TableError {
  enum class Kind { Shape, Range };
  Kind kind;
  std::size_t row;
  std::size_t col;  // meaningless for a row-count shape error
  std::string message;
};

struct TableValidation {
  std::vector<TableError> errors;
  bool ok() const noexcept { return errors.empty(); }
};

/// Checks that `rows` is a size x size matrix with every entry in [0, size).
/// Reports every offending row or cell rather than stopping at the first.
TableValidation validate_table(const std::vector<std::vector<std::int64_t>>& rows,
                               const FiniteDomain& domain);

// Shorthands that also build a default domain. Modular domains are named
// "Z<n>", memory domains "M<n>" (n values + NULL).
FamilyPtr affine_mod(std::size_t n, std::int64_t a = 1);
FamilyPtr mul_mod(std::size_t n);
FamilyPtr poly_mod(std::size_t n, std::int64_t e);
FamilyPtr threshold_memory(std::size_t n, std::int64_t theta);
FamilyPtr quantized_neuron(std::size_t n, std::int64_t s);
FamilyPtr hybrid_memory(std::size_t n, std::int64_t theta, std::int64_t s);
FamilyPtr table_family(const std::vector<std::vector<std::int64_t>>& rows,
                       std::string name = "table");

/// Circular distance on the ring of n values.
std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t n) noexcept;

/// Index of the fixed-point value zero in an n-element quantized domain.
inline Index zero_weight_index(std::size_t n) noexcept { return static_cast<Index>(n / 2); }

}  // namespace fnrep
