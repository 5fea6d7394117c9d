#include <random>

#include "doctest.h"
#include "fnrep/analysis.hpp"
#include "fnrep/families.hpp"
#include "fnrep/topology.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace fnrep;

namespace {

FamilyPtr constant_table(std::size_t n) {
  return table_family(std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0)),
                      "constant");
}

}  // namespace

TEST_CASE("classify") {
  const auto id = classify(FunctionRep(affine_mod(8, 1), 0));
  CHECK(id.injective);
  CHECK(id.surjective);
  CHECK(id.bijective);
  CHECK(id.kind == FunctionKind::Associative);
  CHECK(id.information_loss == 0);

  // 1^2 = 4^2 = 1 mod 5
  const auto sq = classify(FunctionRep(poly_mod(5, 2), 0));
  CHECK_FALSE(sq.injective);
  CHECK(sq.kind == FunctionKind::Additive);
  CHECK(sq.image_size == 3);
  CHECK(sq.information_loss == 2);

  const auto mem = threshold_memory(8, 1);
  for (Index v = 0; v < 8; ++v) CHECK(classify(FunctionRep(mem, v)).kind == FunctionKind::Additive);
}

TEST_CASE("invert") {
  // inverse of 2i + 3 mod 5 composes to the identity
  const FunctionRep fr(affine_mod(5, 2), 3);
  const auto inv = invert(fr);
  REQUIRE(succeeded(inv));
  const auto& g = std::get<std::vector<Index>>(inv);
  for (Index i = 0; i < 5; ++i) CHECK(g[apply(fr, i)] == i);

  const auto none = invert(FunctionRep(constant_table(4), 1));
  REQUIRE_FALSE(succeeded(none));
  const auto& why = std::get<NotInvertible>(none);
  const auto* c = std::get_if<NotInvertible::Collision>(&why.witness);
  REQUIRE(c != nullptr);
  CHECK(c->first == 0);
  CHECK(c->second == 1);
  CHECK(c->output == 0);
  CHECK(why.message().find("both map to 0") != std::string::npos);

  const auto ident = invert(FunctionRep(affine_mod(6, 1), 0));
  CHECK(std::get<std::vector<Index>>(ident) == std::vector<Index>{0, 1, 2, 3, 4, 5});

  const std::vector<Index> hand = {0, 0, 2};
  const auto missing = invert_column(std::vector<Index>{1, 1, 1});
  CHECK(std::holds_alternative<NotInvertible>(missing));
  CHECK_FALSE(succeeded(invert_column(hand)));
}

TEST_CASE("information_loss") {
  CHECK(information_loss(FunctionRep(affine_mod(8, 1), 0)) == 0);
  CHECK(information_loss(FunctionRep(constant_table(8), 0)) == 7);
  CHECK(information_loss(FunctionRep(poly_mod(5, 2), 0)) == 2);
}

TEST_CASE("find_reducer") {
  CHECK(find_reducer(*affine_mod(8, 1), 3, 5) == Index{0});
  CHECK(find_reducer(*mul_mod(7), 3, 4) == Index{5});
  CHECK(oracle::reducer(oracle::poly(5, 2), 5, 0, 0) == std::nullopt);
  CHECK(find_reducer(*poly_mod(5, 2), 0, 0) == std::nullopt);
  CHECK_THROWS_AS(find_reducer(*mul_mod(7), 7, 0), InputError);
}

TEST_CASE("reducer agrees with brute force and reproduces the composition") {
  std::mt19937 rng(5);
  for (std::size_t n = 2; n <= 9; ++n) {
    std::vector<std::pair<FamilyPtr, oracle::Fn>> cases = {
        {affine_mod(n, 1), oracle::affine(n, 1)}, {mul_mod(n), oracle::mul(n)},
        {poly_mod(n, 2), oracle::poly(n, 2)},     {threshold_memory(n, 1), oracle::threshold(n, 1)},
        {quantized_neuron(n, 2), oracle::neuron(n, 2)}};
    const auto rows = oracle::random_table(n, rng);
    cases.emplace_back(table_family(rows),
                       [rows](std::size_t i, std::size_t v) { return static_cast<std::size_t>(rows[i][v]); });
    for (const auto& [fam, ref] : cases) {
      const std::size_t size = fam->size();
      for (Index v1 = 0; v1 < size; ++v1)
        for (Index v2 = 0; v2 < size; ++v2) {
          const auto got = find_reducer(*fam, v1, v2);
          const auto want = oracle::reducer(ref, size, v1, v2);
          REQUIRE(got.has_value() == want.has_value());
          if (!got) continue;
          REQUIRE(*got == *want);
          const auto composed = compose_pair(*fam, v1, v2);
          const auto col = fam->column(*got);
          REQUIRE(std::equal(col.begin(), col.end(), composed.begin()));
          REQUIRE(produces_emergence(*fam, v1, v2) == false);
        }
    }
  }
}

TEST_CASE("produces_emergence") {
  const auto add = affine_mod(8, 1);
  for (Index a = 0; a < 8; ++a)
    for (Index b = 0; b < 8; ++b) REQUIRE_FALSE(produces_emergence(*add, a, b));
  CHECK(produces_emergence(*poly_mod(5, 2), 0, 0));
  const auto mul = mul_mod(7);
  for (Index a = 0; a < 7; ++a)
    for (Index b = 0; b < 7; ++b) REQUIRE_FALSE(produces_emergence(*mul, a, b));
}

TEST_CASE("is_self_similar") {
  for (std::size_t n = 2; n <= 32; ++n) {
    CHECK(is_self_similar(*affine_mod(n, 1)));
    CHECK(is_self_similar(*mul_mod(n)));
  }
  CHECK_FALSE(is_self_similar(*poly_mod(5, 2)));
}

TEST_CASE("emergence_census") {
  const auto add = emergence_census(*affine_mod(8, 1));
  CHECK(add.pairs_total == 64);
  CHECK(add.pairs_emergent == 0);
  CHECK(add.self_similar);
  CHECK_FALSE(add.example_emergent_pair.has_value());

  const auto flat = emergence_census(*constant_table(6));
  CHECK(flat.pairs_emergent == 0);

  const auto sq = emergence_census(*poly_mod(5, 2));
  CHECK(sq.pairs_emergent >= 1);
  CHECK(sq.example_emergent_pair == std::pair<Index, Index>{0, 0});
  CHECK(sq.pairs_reducible + sq.pairs_emergent == sq.pairs_total);
  CHECK_FALSE(sq.self_similar);
}

TEST_CASE("census does not depend on the thread count") {
  for (std::size_t n : {5u, 8u, 13u})
    for (const auto& fam : testing::builtin_families(n)) {
      const auto one = emergence_census(*fam, {1});
      for (unsigned t : {2u, 3u, 8u, 64u}) REQUIRE(emergence_census(*fam, {t}) == one);
      REQUIRE(one.self_similar == is_self_similar(*fam));
      REQUIRE(one.pairs_reducible + one.pairs_emergent == one.pairs_total);
    }
}

TEST_CASE("is_linear") {
  CHECK(is_linear(*affine_mod(8, 3)) == Linearity::Yes);
  CHECK(is_linear(*poly_mod(5, 2)) == Linearity::No);
  CHECK(is_linear(*table_family({{0, 1}, {1, 0}})) == Linearity::Unknown);
  CHECK(is_linear(*mul_mod(7)) == Linearity::No);
  CHECK(is_linear(*threshold_memory(4, 1)) == Linearity::Unknown);
}

TEST_CASE("linear with unit slope implies self-similar") {
  for (std::size_t n = 2; n <= 32; ++n) {
    const auto fam = affine_mod(n, 1);
    REQUIRE(is_linear(*fam) == Linearity::Yes);
    REQUIRE(emergence_census(*fam).pairs_emergent == 0);
  }
}

TEST_CASE("affine slopes other than one are linear but never self-similar") {
  // a*(a*i + v1) + v2 has slope a^2, which no single parameterization reaches
  // unless a^2 == a (mod n).
  for (std::size_t n : {5u, 7u, 8u, 16u}) {
    for (std::size_t a = 2; a < n; ++a) {
      const auto fam = affine_mod(n, static_cast<std::int64_t>(a));
      REQUIRE(is_linear(*fam) == Linearity::Yes);
      const auto c = emergence_census(*fam);
      const bool idempotent = (a * a) % n == a;
      REQUIRE(c.self_similar == idempotent);
      if (!idempotent) REQUIRE(c.pairs_emergent == c.pairs_total);
    }
  }
}

TEST_CASE("associative iff invertible iff lossless, exhaustively") {
  std::mt19937 rng(17);
  for (std::size_t n = 2; n <= 16; ++n) {
    auto fams = testing::builtin_families(n);
    for (int k = 0; k < 4; ++k) fams.push_back(table_family(oracle::random_table(n, rng)));
    for (const auto& fam : fams)
      for (Index v = 0; v < fam->size(); ++v) {
        const FunctionRep fr(fam, v);
        const auto c = classify(fr);
        REQUIRE(c.bijective == (c.injective && c.surjective));
        REQUIRE((c.kind == FunctionKind::Associative) == c.bijective);
        REQUIRE((c.kind == FunctionKind::Associative) == succeeded(invert(fr)));
        REQUIRE((information_loss(fr) > 0) == (c.kind == FunctionKind::Additive));
        REQUIRE(c.information_loss == information_loss(fr));
        REQUIRE((c.information_loss == 0) == c.surjective);
        REQUIRE(c.image_size == oracle::image(
                                    [&](std::size_t i, std::size_t p) { return fam->at(Index(i), Index(p)); },
                                    fam->size(), v)
                                    .size());
      }
  }
}

TEST_CASE("connections never grow the image and keep bijectivity exactly") {
  for (std::size_t n = 2; n <= 16; ++n)
    for (const auto& fam : testing::builtin_families(n))
      for (Index v1 = 0; v1 < fam->size(); ++v1)
        for (Index v2 = 0; v2 < fam->size(); ++v2) {
          const auto a = classify(FunctionRep(fam, v1));
          const auto b = classify(FunctionRep(fam, v2));
          const auto c = classify_column(compose_pair(*fam, v1, v2));
          REQUIRE(c.image_size <= std::min(a.image_size, b.image_size));
          REQUIRE(c.bijective == (a.bijective && b.bijective));
        }
}
