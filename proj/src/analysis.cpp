#include "fnrep/analysis.hpp"

#include <algorithm>
#include <thread>

namespace fnrep {

std::string to_string(FunctionKind kind) {
  return kind == FunctionKind::Associative ? "associative" : "additive";
}

std::string to_string(Linearity l) {
  switch (l) {
    case Linearity::Yes: return "yes";
    case Linearity::No: return "no";
    case Linearity::Unknown: return "unknown";
  }
  return "unknown";
}

ClassReport classify_column(std::span<const Index> column) {
  const std::size_t n = column.size();
  std::vector<std::size_t> hits(n, 0);
  for (Index out : column) ++hits[out];

  ClassReport r;
  r.image_size = static_cast<std::size_t>(
      std::count_if(hits.begin(), hits.end(), [](std::size_t h) { return h > 0; }));
  r.constant = r.image_size == 1;
  r.injective = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h <= 1; });
  r.surjective = r.image_size == n;
  r.bijective = r.injective && r.surjective;
  r.kind = r.bijective ? FunctionKind::Associative : FunctionKind::Additive;
  r.information_loss = n - r.image_size;
  return r;
}

ClassReport classify(const FunctionRep& fr) { return classify_column(fr.column()); }

bool is_constant(const FunctionRep& fr) {
  const auto col = fr.column();
  return std::all_of(col.begin(), col.end(), [&](Index o) { return o == col.front(); });
}

std::string NotInvertible::message() const {
  if (const auto* c = std::get_if<Collision>(&witness))
    return "not invertible: inputs " + std::to_string(c->first) + " and " +
           std::to_string(c->second) + " both map to " + std::to_string(c->output);
  const auto& m = std::get<Missing>(witness);
  return "not invertible: output " + std::to_string(m.output) + " is never produced";
}

Inversion invert_column(std::span<const Index> column) {
  const std::size_t n = column.size();
  constexpr Index kUnset = static_cast<Index>(-1);
  std::vector<Index> inverse(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    const Index out = column[i];
    if (inverse[out] != kUnset)
      return NotInvertible{NotInvertible::Collision{inverse[out], static_cast<Index>(i), out}};
    inverse[out] = static_cast<Index>(i);
  }
  // injective self-map of a finite set is onto; kept for tables built by hand
  for (std::size_t o = 0; o < n; ++o)
    if (inverse[o] == kUnset) return NotInvertible{NotInvertible::Missing{static_cast<Index>(o)}};
  return inverse;
}

Inversion invert(const FunctionRep& fr) { return invert_column(fr.column()); }

std::size_t information_loss(const FunctionRep& fr) {
  return fr.domain().size() - image(fr).size();
}

std::vector<Index> compose_pair(const ParamFamily& family, Index v1, Index v2) {
  const auto first = family.column(v1);
  const auto second = family.column(v2);
  std::vector<Index> out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

namespace {

std::optional<Index> reducer_for(const ParamFamily& family, std::span<const Index> composed) {
  const std::size_t n = family.size();
  for (std::size_t cand = 0; cand < n; ++cand) {
    const auto col = family.column(static_cast<Index>(cand));
    if (std::equal(col.begin(), col.end(), composed.begin())) return static_cast<Index>(cand);
  }
  return std::nullopt;
}

void check_params(const ParamFamily& family, Index v1, Index v2) {
  if (!family.domain().contains(v1) || !family.domain().contains(v2))
    throw InputError("parameter pair outside domain of family '" + family.name() + "'");
}

struct CensusSlice {
  std::size_t reducible = 0;
  std::size_t emergent = 0;
  std::optional<std::pair<Index, Index>> first_emergent;
};

CensusSlice census_rows(const ParamFamily& family, std::size_t row_begin, std::size_t row_end) {
  CensusSlice slice;
  const std::size_t n = family.size();
  std::vector<Index> composed(n);
  for (std::size_t v1 = row_begin; v1 < row_end; ++v1) {
    const auto first = family.column(static_cast<Index>(v1));
    for (std::size_t v2 = 0; v2 < n; ++v2) {
      const auto second = family.column(static_cast<Index>(v2));
      for (std::size_t i = 0; i < n; ++i) composed[i] = second[first[i]];
      if (reducer_for(family, composed)) {
        ++slice.reducible;
      } else {
        ++slice.emergent;
        if (!slice.first_emergent)
          slice.first_emergent = {static_cast<Index>(v1), static_cast<Index>(v2)};
      }
    }
  }
  return slice;
}

}  // namespace

std::optional<Index> find_reducer(const ParamFamily& family, Index v1, Index v2) {
  check_params(family, v1, v2);
  return reducer_for(family, compose_pair(family, v1, v2));
}

bool produces_emergence(const ParamFamily& family, Index v1, Index v2) {
  return !find_reducer(family, v1, v2).has_value();
}

CensusReport emergence_census(const ParamFamily& family, CensusOptions options) {
  const std::size_t n = family.size();
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, n);

  std::vector<CensusSlice> slices(workers);
  if (workers == 1) {
    slices[0] = census_rows(family, 0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { slices[w] = census_rows(family, begin, end); });
    }
  }

  CensusReport report;
  report.family = family.name();
  report.domain_size = n;
  report.pairs_total = n * n;
  // slices cover increasing v1 ranges, so the first witness found is the
  // lexicographically smallest
  for (const auto& s : slices) {
    report.pairs_reducible += s.reducible;
    report.pairs_emergent += s.emergent;
    if (!report.example_emergent_pair && s.first_emergent)
      report.example_emergent_pair = s.first_emergent;
  }
  report.self_similar = report.pairs_emergent == 0;
  return report;
}

bool is_self_similar(const ParamFamily& family) {
  const std::size_t n = family.size();
  for (std::size_t v1 = 0; v1 < n; ++v1)
    for (std::size_t v2 = 0; v2 < n; ++v2)
      if (!find_reducer(family, static_cast<Index>(v1), static_cast<Index>(v2))) return false;
  return true;
}

Linearity is_linear(const ParamFamily& family) {
  const bool modular = std::holds_alternative<AffineMod>(family.rule()) ||
                       std::holds_alternative<MulMod>(family.rule()) ||
                       std::holds_alternative<PolyMod>(family.rule());
  if (!modular) return Linearity::Unknown;

  const std::size_t n = family.size();
  for (std::size_t a = 0; a < n; ++a) {
    bool fits = true;
    for (std::size_t v = 0; v < n && fits; ++v) {
      const auto col = family.column(static_cast<Index>(v));
      const std::size_t offset = col[0];
      for (std::size_t i = 1; i < n && fits; ++i) fits = col[i] == (a * i + offset) % n;
    }
    if (fits) return Linearity::Yes;
  }
  return Linearity::No;
}

}  // namespace fnrep
