#include <filesystem>

#include "doctest.h"
#include "fnrep/dsl.hpp"
#include "model_gen.hpp"
#include "test_support.hpp"

using namespace fnrep;
using dsl::Diagnostic;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    out.push_back(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return out;
}

void check_positions(const std::string& src, const std::vector<Diagnostic>& diags) {
  const auto lines = lines_of(src);
  for (const auto& d : diags) {
    REQUIRE(d.line >= 1);
    REQUIRE(d.line <= lines.size());
    REQUIRE(d.column >= 1);
    REQUIRE(d.column <= lines[d.line - 1].size() + 1);
  }
}

std::size_t error_count(const dsl::ParseResult& r) {
  return static_cast<std::size_t>(std::count_if(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  }));
}

}  // namespace

TEST_CASE("parse a small model") {
  const auto r = dsl::parse_text("domain Z8 size 8\nfamily add over Z8 = affine_mod(a=1)\nfr m = add(3)\n");
  REQUIRE(r.ok());
  CHECK(r.model->domains.size() == 1);
  CHECK(r.model->families.size() == 1);
  CHECK(r.model->frs.size() == 1);
  CHECK(r.model->frs.at("m").param() == 3);
  CHECK(r.model->families.at("add")->at(6, 3) == 1);
}

TEST_CASE("unresolved family is reported on its line") {
  const std::string src = "domain Z8 size 8\nfr m = nosuch(3)\n";
  const auto r = dsl::parse_text(src);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].line == 2);
  CHECK(r.diagnostics[0].column == 8);
  CHECK(r.diagnostics[0].message == "unresolved family 'nosuch'");
}

TEST_CASE("parallel stage followed by a sequential one") {
  const auto r = dsl::parse_text(
      "domain M8 size 8 null\n"
      "family mem over M8 = threshold_memory(theta=1)\n"
      "fr m1 = mem(2)\nfr m2 = mem(6)\nfr m3 = mem(6)\n"
      "net p = [m1 | m2] @first -> m3\n");
  REQUIRE(r.ok());
  const auto& net = r.model->nets.at("p");
  REQUIRE(net.stage_count() == 2);
  const auto* par = std::get_if<ParallelStage>(&net.stages()[0]);
  REQUIRE(par != nullptr);
  CHECK(par->policy.kind == ArbitrationPolicy::Kind::FirstNonNull);
  CHECK(par->nodes.size() == 2);
  CHECK(std::holds_alternative<SequentialStage>(net.stages()[1]));
  CHECK(run(net, 5) == 6);
}

TEST_CASE("all errors are reported, not just the first") {
  const std::string src =
      "domain Z4 size 4\n"
      "bogus line here\n"
      "family f over Z9 = affine_mod(a=1)\n"
      "family g over Z4 = poly_mod(e=1)\n"
      "family h over Z4 = affine_mod(b=1)\n"
      "family t over Z4 = table [0 1; 2 3]\n"
      "fr ok = g(1)\n"
      "fr bad = f(2)\n"
      "fr x = nope(1)\n"
      "domain Z4 size 4\n"
      "net n = x -> missing\n"
      "net k = [a |\n";
  const auto r = dsl::parse_text(src);
  REQUIRE_FALSE(r.ok());
  check_positions(src, r.diagnostics);

  auto has = [&](std::size_t line, const std::string& fragment) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
      return d.line == line && d.message.find(fragment) != std::string::npos;
    });
  };
  CHECK(has(2, "unknown keyword 'bogus'"));
  CHECK(has(3, "unresolved domain 'Z9'"));
  CHECK(has(4, "e >= 2"));
  CHECK(has(5, "unknown parameter 'b'"));
  CHECK(has(5, "requires parameter 'a'"));
  CHECK(has(6, "table has 2 rows"));
  CHECK(has(9, "unresolved family 'nope'"));
  CHECK(has(10, "duplicate domain 'Z4'"));
  CHECK(has(11, "unresolved fr 'missing'"));
  CHECK(has(12, "expected fr name"));
  // references to broken declarations do not cascade
  CHECK_FALSE(has(7, "unresolved"));
  CHECK_FALSE(has(8, "unresolved"));
  CHECK_FALSE(has(11, "unresolved fr 'x'"));
}

TEST_CASE("syntax errors") {
  struct Case {
    const char* src;
    std::size_t column;
    const char* fragment;
  };
  const Case cases[] = {
      {"domain Z size", 14, "expected domain size, found end of line"},
      {"domain Z size 4 extra", 17, "expected end of line"},
      {"fr m = f(3", 11, "expected ')'"},
      {"net n = [a | b] @sometimes", 18, "unknown arbitration policy"},
      {"domain Z size 4$", 16, "unexpected character '$'"},
      {"domain Z size 99999999999999999999", 15, "out of range"},
      {"= x", 1, "expected a statement keyword"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.src);
    const auto r = dsl::parse_text(c.src);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].column == c.column);
    CHECK(r.diagnostics[0].message.find(c.fragment) != std::string::npos);
    check_positions(c.src, r.diagnostics);
  }
}

TEST_CASE("range and reference checks") {
  const auto r = dsl::parse_text(
      "domain Z size 0\n"
      "domain M size 4 null\n"
      "domain P size 4\n"
      "family add over P = affine_mod(a=1)\n"
      "family mem over M = threshold_memory(theta=-1)\n"
      "family wrong over P = threshold_memory(theta=1)\n"
      "family t over P = table [0 1 2 3; 0 1 2 3; 0 1 2 3; 0 1 2 9]\n"
      "fr big = add(4)\n"
      "fr a = add(1)\n"
      "net dup = [a | a] @first\n"
      "net pri = [a] @priority(b)\n"
      "net best = [a] @best\n");
  REQUIRE_FALSE(r.ok());
  std::vector<std::string> msgs;
  for (const auto& d : r.diagnostics) msgs.push_back(std::to_string(d.line) + ":" + std::to_string(d.column) + " " + d.message);
  auto has = [&](const std::string& fragment) {
    return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) { return m.find(fragment) != std::string::npos; });
  };
  CHECK(has("1:15 domain size must be between"));
  CHECK(has("theta >= 0"));
  CHECK(has("requires a domain whose last element is null"));
  CHECK(has("7:59 table: entry (3, 3) = 9"));
  CHECK(has("8:14 parameter 4 outside [0, 4)"));
  CHECK(has("appears twice in one parallel stage"));
  CHECK(has("priority lists 'b'"));
  CHECK(has("best-score arbitration needs a domain with null"));
}

TEST_CASE("comments, blank lines, CRLF and forward references") {
  const auto r = dsl::parse_text(
      "# header\r\n"
      "\r\n"
      "fr m = add(3)   # trailing\r\n"
      "family add over Z8 = affine_mod(a=1)\r\n"
      "domain Z8 size 8\r\n");
  REQUIRE(r.ok());
  CHECK(r.model->frs.at("m").param() == 3);
}

TEST_CASE("large domains warn") {
  const auto r = dsl::parse_text("domain Z size 80\nfamily m over Z = mul_mod()\n");
  REQUIRE(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].severity == Diagnostic::Severity::Warning);
  CHECK(r.diagnostics[0].line == 2);
}

TEST_CASE("serialize") {
  CHECK(dsl::serialize(dsl::Model{}).empty());

  const auto r = dsl::parse_text(
      "fr b = tab(1)\n"
      "family tab   over  B =  table [ 1 0 ;0 1]\n"
      "domain B size 2\n"
      "domain M size 3 null\n"
      "family h over M = hybrid_memory(s=2, theta=1)\n"
      "fr a = tab(0)\n"
      "fr h1 = h(1)\n"
      "fr h2 = h(2)\n"
      "net z = a -> b -> a\n"
      "net y = [h1 | h2] @priority(h2, h1) -> [h2 | h1] @best -> h1\n");
  REQUIRE(r.ok());
  CHECK(dsl::serialize(*r.model) ==
        "domain B size 2\n"
        "domain M size 3 null\n"
        "family h over M = hybrid_memory(theta=1, s=2)\n"
        "family tab over B = table [1 0; 0 1]\n"
        "fr a = tab(0)\n"
        "fr b = tab(1)\n"
        "fr h1 = h(1)\n"
        "fr h2 = h(2)\n"
        "net y = [h1 | h2] @priority(h2, h1) -> [h2 | h1] @best -> h1\n"
        "net z = a -> b -> a\n");
}

TEST_CASE("repeated FRs get distinct node ids") {
  const auto r = dsl::parse_text("domain Z size 5\nfamily s over Z = poly_mod(e=2)\nfr q = s(0)\nnet n = q -> q -> q\n");
  REQUIRE(r.ok());
  const auto& stages = r.model->nets.at("n").stages();
  CHECK(std::get<SequentialStage>(stages[0]).node.id == "q");
  CHECK(std::get<SequentialStage>(stages[1]).node.id == "q@1");
  CHECK(std::get<SequentialStage>(stages[2]).node.id == "q@2");
  CHECK(dsl::serialize_net("n", r.model->nets.at("n")) == "net n = q -> q -> q");
}

TEST_CASE("parse after serialize is the identity on random models") {
  testing::ModelGenerator gen(12345);
  for (int k = 0; k < 300; ++k) {
    const auto model = gen.next();
    const auto text = dsl::serialize(model);
    CAPTURE(text);
    const auto back = dsl::parse_text(text);
    REQUIRE(error_count(back) == 0);
    REQUIRE(dsl::structurally_equal(model, *back.model));
    REQUIRE(dsl::serialize(*back.model) == text);
  }
}

TEST_CASE("structural equality notices differences") {
  const auto a = dsl::parse_text("domain Z size 4\nfamily f over Z = affine_mod(a=1)\nfr x = f(1)\n");
  const auto b = dsl::parse_text("domain Z size 4\nfamily f over Z = affine_mod(a=3)\nfr x = f(1)\n");
  const auto c = dsl::parse_text("domain Z size 4\nfamily f over Z = affine_mod(a=1)\nfr x = f(2)\n");
  REQUIRE(a.ok());
  CHECK(dsl::structurally_equal(*a.model, *a.model));
  CHECK_FALSE(dsl::structurally_equal(*a.model, *b.model));
  CHECK_FALSE(dsl::structurally_equal(*a.model, *c.model));
}

TEST_CASE("shipped corpus is canonical after one round") {
  for (const auto& entry : std::filesystem::directory_iterator(FNREP_CORPUS_DIR)) {
    if (entry.path().extension() != ".frd") continue;
    CAPTURE(entry.path().string());
    const auto first = dsl::parse_text(testing::read_file(entry.path().string()));
    REQUIRE(first.ok());
    const auto canon = dsl::serialize(*first.model);
    const auto second = dsl::parse_text(canon);
    REQUIRE(second.ok());
    CHECK(dsl::serialize(*second.model) == canon);
    CHECK(dsl::structurally_equal(*first.model, *second.model));
  }
}

TEST_CASE("diagnostic positions always point into the source") {
  // mutate valid text by deleting characters and check every diagnostic
  const std::string base = testing::read_file(std::string(FNREP_CORPUS_DIR) + "/case_studies.frd");
  std::mt19937 rng(99);
  for (int k = 0; k < 300; ++k) {
    std::string src = base;
    for (int cut = 0; cut < 3; ++cut) src.erase(rng() % src.size(), 1 + rng() % 4);
    const auto r = dsl::parse_text(src);
    check_positions(src, r.diagnostics);
  }
}
