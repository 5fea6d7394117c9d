#include "fnrep/families.hpp"

#include <algorithm>

namespace fnrep {
namespace {

template <class Fn>
std::vector<Index> tabulate(std::size_t size, Fn&& fn) {
  std::vector<Index> table(size * size);
  for (std::size_t v = 0; v < size; ++v)
    for (std::size_t i = 0; i < size; ++i)
      table[v * size + i] = static_cast<Index>(fn(i, v));
  return table;
}

std::size_t pow_mod(std::size_t base, std::int64_t exp, std::size_t n) {
  std::size_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = result * base % n;
    base = base * base % n;
    exp >>= 1;
  }
  return result;
}

// Round-half-up of max(0, num) / den, shifted by the zero index and clamped.
std::size_t quantize_ramp(std::int64_t num, std::int64_t den, std::size_t n) {
  const auto zero = static_cast<std::int64_t>(n / 2);
  const std::int64_t ramped = std::max<std::int64_t>(0, num);
  const std::int64_t rounded = (2 * ramped + den) / (2 * den);
  return static_cast<std::size_t>(
      std::clamp<std::int64_t>(rounded + zero, 0, static_cast<std::int64_t>(n) - 1));
}

void require_plain(const FiniteDomain& d, const char* variant) {
  if (d.has_null())
    throw ConstructionError(std::string(variant) + " requires a domain without null, got '" +
                            d.name() + "'");
}

void require_null_last(const FiniteDomain& d, const char* variant) {
  if (!d.has_null() || *d.null_index() + 1 != d.size())
    throw ConstructionError(std::string(variant) +
                            " requires a domain whose last element is null, got '" +
                            d.name() + "'");
  if (d.value_count() == 0)
    throw ConstructionError(std::string(variant) + " requires at least one non-null value");
}

std::size_t threshold_lookup(std::size_t i, std::size_t v, std::size_t n, std::int64_t theta) {
  if (i >= n || v >= n) return n;
  return static_cast<std::int64_t>(circular_distance(i, v, n)) <= theta ? v : n;
}

struct Builder {
  const FiniteDomain& domain;

  std::vector<Index> operator()(const AffineMod& r) const {
    require_plain(domain, "affine_mod");
    const std::size_t n = domain.size();
    if (r.a < 1 || static_cast<std::size_t>(r.a) >= n)
      throw ConstructionError("affine_mod requires 1 <= a < n (a=" + std::to_string(r.a) +
                              ", n=" + std::to_string(n) + ")");
    const auto a = static_cast<std::size_t>(r.a);
    return tabulate(n, [&](std::size_t i, std::size_t v) { return (a * i + v) % n; });
  }

  std::vector<Index> operator()(const MulMod&) const {
    require_plain(domain, "mul_mod");
    const std::size_t n = domain.size();
    return tabulate(n, [&](std::size_t i, std::size_t v) { return i * v % n; });
  }

  std::vector<Index> operator()(const PolyMod& r) const {
    require_plain(domain, "poly_mod");
    if (r.e < 2) throw ConstructionError("poly_mod requires e >= 2");
    const std::size_t n = domain.size();
    return tabulate(n, [&](std::size_t i, std::size_t v) { return (pow_mod(i, r.e, n) + v) % n; });
  }

  std::vector<Index> operator()(const ThresholdMemory& r) const {
    require_null_last(domain, "threshold_memory");
    if (r.theta < 0) throw ConstructionError("threshold_memory requires theta >= 0");
    const std::size_t n = domain.value_count();
    return tabulate(domain.size(),
                    [&](std::size_t i, std::size_t v) { return threshold_lookup(i, v, n, r.theta); });
  }

  std::vector<Index> operator()(const QuantizedNeuron& r) const {
    require_plain(domain, "quantized_neuron");
    if (r.s <= 0) throw ConstructionError("quantized_neuron requires s > 0");
    const std::size_t n = domain.size();
    const auto zero = static_cast<std::int64_t>(n / 2);
    // x(i) * x(v) * s = (i - zero)(v - zero) / s
    return tabulate(n, [&](std::size_t i, std::size_t v) {
      const std::int64_t num =
          (static_cast<std::int64_t>(i) - zero) * (static_cast<std::int64_t>(v) - zero);
      return quantize_ramp(num, r.s, n);
    });
  }

  std::vector<Index> operator()(const HybridMemory& r) const {
    require_null_last(domain, "hybrid_memory");
    if (r.theta < 0) throw ConstructionError("hybrid_memory requires theta >= 0");
    if (r.s <= 0) throw ConstructionError("hybrid_memory requires s > 0");
    const std::size_t n = domain.value_count();
    const auto zero = static_cast<std::int64_t>(n / 2);
    return tabulate(domain.size(), [&](std::size_t i, std::size_t v) {
      const std::size_t recalled = threshold_lookup(i, v, n, r.theta);
      if (recalled == n) return n;
      // x(o) * s = o - zero
      return quantize_ramp(static_cast<std::int64_t>(recalled) - zero, 1, n);
    });
  }

  std::vector<Index> operator()(const ExplicitTable& r) const {
    const auto check = validate_table(r.rows, domain);
    if (!check.ok()) throw ConstructionError("invalid table: " + check.errors.front().message);
    const std::size_t n = domain.size();
    return tabulate(n, [&](std::size_t i, std::size_t v) { return r.rows[i][v]; });
  }
};

}  // namespace

std::size_t circular_distance(std::size_t a, std::size_t b, std::size_t n) noexcept {
  const std::size_t d = a > b ? a - b : b - a;
  return std::min(d, n - d);
}

FamilyPtr make_family(const FamilySpec& spec, std::string name) {
  auto table = std::visit(Builder{spec.domain}, spec.rule);
  if (name.empty()) name = rule_name(spec.rule);
  return std::make_shared<const ParamFamily>(std::move(name), spec.domain, spec.rule,
                                             std::move(table));
}

TableValidation validate_table(const std::vector<std::vector<std::int64_t>>& rows,
                               const FiniteDomain& domain) {
  TableValidation result;
  const std::size_t n = domain.size();
  if (rows.size() != n)
    result.errors.push_back({TableError::Kind::Shape, rows.size(), 0,
                             "table has " + std::to_string(rows.size()) + " rows, expected " +
                                 std::to_string(n)});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n)
      result.errors.push_back({TableError::Kind::Shape, r, rows[r].size(),
                               "row " + std::to_string(r) + " has " +
                                   std::to_string(rows[r].size()) + " columns, expected " +
                                   std::to_string(n)});
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const auto value = rows[r][c];
      if (value < 0 || static_cast<std::uint64_t>(value) >= n)
        result.errors.push_back({TableError::Kind::Range, r, c,
                                 "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                     ") = " + std::to_string(value) + " is outside [0, " +
                                     std::to_string(n) + ")"});
    }
  }
  return result;
}

FamilyPtr affine_mod(std::size_t n, std::int64_t a) {
  return make_family({AffineMod{a}, FiniteDomain("Z" + std::to_string(n), n)});
}

FamilyPtr mul_mod(std::size_t n) {
  return make_family({MulMod{}, FiniteDomain("Z" + std::to_string(n), n)});
}

FamilyPtr poly_mod(std::size_t n, std::int64_t e) {
  return make_family({PolyMod{e}, FiniteDomain("Z" + std::to_string(n), n)});
}

FamilyPtr threshold_memory(std::size_t n, std::int64_t theta) {
  return make_family({ThresholdMemory{theta}, FiniteDomain::with_null("M" + std::to_string(n), n)});
}

FamilyPtr quantized_neuron(std::size_t n, std::int64_t s) {
  return make_family({QuantizedNeuron{s}, FiniteDomain("Q" + std::to_string(n), n)});
}

FamilyPtr hybrid_memory(std::size_t n, std::int64_t theta, std::int64_t s) {
  return make_family(
      {HybridMemory{theta, s}, FiniteDomain::with_null("M" + std::to_string(n), n)});
}

FamilyPtr table_family(const std::vector<std::vector<std::int64_t>>& rows, std::string name) {
  const std::size_t n = rows.empty() ? 0 : rows.size();
  if (n == 0) throw ConstructionError("table must have at least one row");
  return make_family({ExplicitTable{rows}, FiniteDomain("T" + std::to_string(n), n)},
                     std::move(name));
}

}  // namespace fnrep
