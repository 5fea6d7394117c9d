#include "fnrep/dsl.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

#include "fnrep/families.hpp"

namespace fnrep::dsl {
namespace {

struct Pos {
  std::size_t line = 0;
  std::size_t column = 0;
};

// ---------------------------------------------------------------------------
// Lexing

struct Token {
  enum class Kind { Ident, Int, Punct, Arrow, End };
  Kind kind;
  std::string text;
  Pos pos;
  std::int64_t value = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of line";
    case Token::Kind::Arrow: return "'->'";
    default: return "'" + t.text + "'";
  }
}

class LineLexer {
 public:
  LineLexer(std::string_view text, std::size_t line_no, std::size_t end_column,
            std::vector<Diagnostic>& diags)
      : text_(text), line_(line_no), end_column_(end_column), diags_(diags) {}

  // Returns false if the line has a lexical error (already reported).
  bool run(std::vector<Token>& out) {
    std::size_t k = 0;
    while (k < text_.size()) {
      const char c = text_[k];
      const Pos pos{line_, k + 1};
      if (c == '#') break;
      if (c == ' ' || c == '\t') {
        ++k;
      } else if (ident_start(c)) {
        std::size_t e = k;
        while (e < text_.size() && ident_char(text_[e])) ++e;
        out.push_back({Token::Kind::Ident, std::string(text_.substr(k, e - k)), pos});
        k = e;
      } else if (c == '-' && k + 1 < text_.size() && text_[k + 1] == '>') {
        out.push_back({Token::Kind::Arrow, "->", pos});
        k += 2;
      } else if (digit(c) || (c == '-' && k + 1 < text_.size() && digit(text_[k + 1]))) {
        std::size_t e = k + 1;
        while (e < text_.size() && digit(text_[e])) ++e;
        Token t{Token::Kind::Int, std::string(text_.substr(k, e - k)), pos};
        const auto [ptr, ec] = std::from_chars(text_.data() + k, text_.data() + e, t.value);
        if (ec != std::errc{} || ptr != text_.data() + e) {
          error(pos, "integer literal '" + t.text + "' out of range");
          return false;
        }
        if (e < text_.size() && ident_char(text_[e])) {
          error(pos, "malformed number '" + std::string(text_.substr(k, e - k + 1)) + "'");
          return false;
        }
        out.push_back(std::move(t));
        k = e;
      } else if (std::string_view("=(),[];|@").find(c) != std::string_view::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, c), pos});
        ++k;
      } else {
        error(pos, "unexpected character '" + std::string(1, c) + "'");
        return false;
      }
    }
    out.push_back({Token::Kind::End, "", {line_, end_column_}});
    return true;
  }

 private:
  void error(Pos p, std::string msg) {
    diags_.push_back({Diagnostic::Severity::Error, p.line, p.column, std::move(msg)});
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t end_column_;
  std::vector<Diagnostic>& diags_;
};

// ---------------------------------------------------------------------------
// Syntax (pass one)

struct NameRef {
  std::string name;
  Pos pos;
};

struct IntLit {
  std::int64_t value = 0;
  Pos pos;
};

struct DomainStmt {
  NameRef name;
  IntLit size;
  bool with_null = false;
};

struct ParamArg {
  NameRef key;
  IntLit value;
};

struct FamilyStmt {
  NameRef name;
  NameRef domain;
  NameRef variant;
  std::vector<ParamArg> args;           // builtin variants
  std::vector<std::vector<IntLit>> rows;  // table
  std::vector<Pos> row_pos;
  bool is_table = false;
};

struct FrStmt {
  NameRef name;
  NameRef family;
  IntLit param;
};

struct StageSyntax {
  bool parallel = false;
  std::vector<NameRef> frs;
  ArbitrationPolicy::Kind policy = ArbitrationPolicy::Kind::FirstNonNull;
  std::vector<NameRef> order;
  Pos pos;
};

struct NetStmt {
  NameRef name;
  std::vector<StageSyntax> stages;
};

struct SyntaxError {
  Pos pos;
  std::string message;
};

class StatementParser {
 public:
  explicit StatementParser(const std::vector<Token>& toks) : toks_(toks) {}

  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_ < toks_.size() - 1 ? k_++ : k_]; }

  bool at_punct(char c) const { return peek().kind == Token::Kind::Punct && peek().text[0] == c; }

  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw SyntaxError{at.pos, "expected " + expected + ", found " + describe(at)};
  }

  NameRef ident(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail(t, what);
    next();
    return {t.text, t.pos};
  }

  void keyword(const std::string& kw) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || t.text != kw) fail(t, "'" + kw + "'");
    next();
  }

  IntLit integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Int) fail(t, what);
    next();
    return {t.value, t.pos};
  }

  void punct(char c) {
    if (!at_punct(c)) fail(peek(), std::string("'") + c + "'");
    next();
  }

  void end() {
    if (peek().kind != Token::Kind::End) fail(peek(), "end of line");
  }

  DomainStmt domain() {
    DomainStmt s;
    s.name = ident("domain name");
    keyword("size");
    s.size = integer("domain size");
    if (peek().kind == Token::Kind::Ident && peek().text == "null") {
      next();
      s.with_null = true;
    }
    end();
    return s;
  }

  FamilyStmt family() {
    FamilyStmt s;
    s.name = ident("family name");
    keyword("over");
    s.domain = ident("domain name");
    punct('=');
    s.variant = ident("family variant");
    if (s.variant.name == "table") {
      s.is_table = true;
      punct('[');
      s.rows.emplace_back();
      s.row_pos.push_back(peek().pos);
      while (!at_punct(']')) {
        if (at_punct(';')) {
          next();
          s.rows.emplace_back();
          s.row_pos.push_back(peek().pos);
          continue;
        }
        s.rows.back().push_back(integer("table entry, ';' or ']'"));
      }
      next();
      // `table []` has no rows at all
      if (s.rows.size() == 1 && s.rows.front().empty()) {
        s.rows.clear();
        s.row_pos.clear();
      }
    } else {
      punct('(');
      if (!at_punct(')')) {
        for (;;) {
          ParamArg arg;
          arg.key = ident("parameter name");
          punct('=');
          arg.value = integer("integer value");
          s.args.push_back(arg);
          if (at_punct(',')) {
            next();
            continue;
          }
          break;
        }
      }
      punct(')');
    }
    end();
    return s;
  }

  FrStmt fr() {
    FrStmt s;
    s.name = ident("fr name");
    punct('=');
    s.family = ident("family name");
    punct('(');
    s.param = integer("parameter value");
    punct(')');
    end();
    return s;
  }

  NetStmt net() {
    NetStmt s;
    s.name = ident("net name");
    punct('=');
    for (;;) {
      s.stages.push_back(stage());
      if (peek().kind == Token::Kind::Arrow) {
        next();
        continue;
      }
      break;
    }
    end();
    return s;
  }

 private:
  StageSyntax stage() {
    StageSyntax st;
    st.pos = peek().pos;
    if (!at_punct('[')) {
      st.frs.push_back(ident("fr name or '['"));
      return st;
    }
    next();
    st.parallel = true;
    st.frs.push_back(ident("fr name"));
    while (at_punct('|')) {
      next();
      st.frs.push_back(ident("fr name"));
    }
    punct(']');
    punct('@');
    const NameRef policy = ident("arbitration policy");
    if (policy.name == "first") {
      st.policy = ArbitrationPolicy::Kind::FirstNonNull;
    } else if (policy.name == "best") {
      st.policy = ArbitrationPolicy::Kind::BestScore;
    } else if (policy.name == "priority") {
      st.policy = ArbitrationPolicy::Kind::Priority;
      punct('(');
      st.order.push_back(ident("fr name"));
      while (at_punct(',')) {
        next();
        st.order.push_back(ident("fr name"));
      }
      punct(')');
    } else {
      throw SyntaxError{policy.pos, "unknown arbitration policy '" + policy.name +
                                        "' (expected first, best or priority)"};
    }
    return st;
  }

  const std::vector<Token>& toks_;
  std::size_t k_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution (pass two)

struct VariantInfo {
  const char* name;
  std::vector<std::string> keys;
};

const std::vector<VariantInfo>& variants() {
  static const std::vector<VariantInfo> v = {
      {"affine_mod", {"a"}},          {"mul_mod", {}},
      {"poly_mod", {"e"}},            {"threshold_memory", {"theta"}},
      {"quantized_neuron", {"s"}},    {"hybrid_memory", {"theta", "s"}},
  };
  return v;
}

class Resolver {
 public:
  explicit Resolver(std::vector<Diagnostic>& diags) : diags_(diags) {}

  std::vector<DomainStmt> domains;
  std::vector<FamilyStmt> families;
  std::vector<FrStmt> frs;
  std::vector<NetStmt> nets;

  Model resolve() {
    Model m;
    for (const auto& s : domains) resolve_domain(s, m);
    for (const auto& s : families) resolve_family(s, m);
    for (const auto& s : frs) resolve_fr(s, m);
    for (const auto& s : nets) resolve_net(s, m);
    return m;
  }

 private:
  void error(Pos p, std::string msg) {
    diags_.push_back({Diagnostic::Severity::Error, p.line, p.column, std::move(msg)});
  }
  void warning(Pos p, std::string msg) {
    diags_.push_back({Diagnostic::Severity::Warning, p.line, p.column, std::move(msg)});
  }

  // Declares `name` in a namespace; false (with a diagnostic) on duplicates.
  bool declare(std::set<std::string>& ns, const NameRef& name, const char* what) {
    if (ns.insert(name.name).second) return true;
    error(name.pos, std::string("duplicate ") + what + " '" + name.name + "'");
    return false;
  }

  void resolve_domain(const DomainStmt& s, Model& m) {
    if (!declare(domain_names_, s.name, "domain")) return;
    const std::int64_t total = s.size.value + (s.with_null ? 1 : 0);
    if (s.size.value < 1 || total > static_cast<std::int64_t>(kMaxDomainSize)) {
      error(s.size.pos, "domain size must be between 1 and " +
                            std::to_string(kMaxDomainSize - (s.with_null ? 1 : 0)));
      broken_domains_.insert(s.name.name);
      return;
    }
    const auto n = static_cast<std::size_t>(s.size.value);
    m.domains.emplace(s.name.name, s.with_null ? FiniteDomain::with_null(s.name.name, n)
                                               : FiniteDomain(s.name.name, n));
  }

  void resolve_family(const FamilyStmt& s, Model& m) {
    if (!declare(family_names_, s.name, "family")) return;
    const auto dom = m.domains.find(s.domain.name);
    if (dom == m.domains.end()) {
      if (!broken_domains_.count(s.domain.name))
        error(s.domain.pos, "unresolved domain '" + s.domain.name + "'");
      broken_families_.insert(s.name.name);
      return;
    }
    const FiniteDomain& domain = dom->second;

    std::optional<FamilyRule> rule =
        s.is_table ? table_rule(s, domain) : builtin_rule(s);
    if (!rule) {
      broken_families_.insert(s.name.name);
      return;
    }
    try {
      m.families.emplace(s.name.name, make_family({*rule, domain}, s.name.name));
    } catch (const ConstructionError& e) {
      error(s.variant.pos, e.what());
      broken_families_.insert(s.name.name);
      return;
    }
    if (domain.size() > 64)
      warning(s.domain.pos, "domain '" + domain.name() + "' has " +
                                std::to_string(domain.size()) +
                                " elements; census will need --force");
  }

  std::optional<FamilyRule> table_rule(const FamilyStmt& s, const FiniteDomain& domain) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : s.rows) {
      rows.emplace_back();
      for (const auto& lit : r) rows.back().push_back(lit.value);
    }
    const auto check = validate_table(rows, domain);
    for (const auto& err : check.errors) {
      Pos p = s.variant.pos;
      if (err.kind == TableError::Kind::Range)
        p = s.rows[err.row][err.col].pos;
      else if (err.row < s.row_pos.size())
        p = s.row_pos[err.row];
      error(p, "table: " + err.message);
    }
    if (!check.ok()) return std::nullopt;
    return ExplicitTable{std::move(rows)};
  }

  std::optional<FamilyRule> builtin_rule(const FamilyStmt& s) {
    const auto& vs = variants();
    const auto info = std::find_if(vs.begin(), vs.end(),
                                   [&](const VariantInfo& v) { return s.variant.name == v.name; });
    if (info == vs.end()) {
      error(s.variant.pos, "unknown family variant '" + s.variant.name + "'");
      return std::nullopt;
    }
    std::map<std::string, std::int64_t> values;
    bool ok = true;
    for (const auto& arg : s.args) {
      if (std::find(info->keys.begin(), info->keys.end(), arg.key.name) == info->keys.end()) {
        error(arg.key.pos, "unknown parameter '" + arg.key.name + "' for " + info->name);
        ok = false;
      } else if (!values.emplace(arg.key.name, arg.value.value).second) {
        error(arg.key.pos, "duplicate parameter '" + arg.key.name + "'");
        ok = false;
      }
    }
    for (const auto& key : info->keys) {
      if (!values.count(key)) {
        error(s.variant.pos, std::string(info->name) + " requires parameter '" + key + "'");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;

    const std::string v = info->name;
    if (v == "affine_mod") return AffineMod{values["a"]};
    if (v == "mul_mod") return MulMod{};
    if (v == "poly_mod") return PolyMod{values["e"]};
    if (v == "threshold_memory") return ThresholdMemory{values["theta"]};
    if (v == "quantized_neuron") return QuantizedNeuron{values["s"]};
    return HybridMemory{values["theta"], values["s"]};
  }

  void resolve_fr(const FrStmt& s, Model& m) {
    if (!declare(fr_names_, s.name, "fr")) return;
    const auto fam = m.families.find(s.family.name);
    if (fam == m.families.end()) {
      if (!broken_families_.count(s.family.name))
        error(s.family.pos, "unresolved family '" + s.family.name + "'");
      broken_frs_.insert(s.name.name);
      return;
    }
    const std::size_t n = fam->second->size();
    if (s.param.value < 0 || static_cast<std::uint64_t>(s.param.value) >= n) {
      error(s.param.pos, "parameter " + std::to_string(s.param.value) + " outside [0, " +
                             std::to_string(n) + ") for family '" + s.family.name + "'");
      broken_frs_.insert(s.name.name);
      return;
    }
    m.frs.emplace(s.name.name, FunctionRep(fam->second, static_cast<Index>(s.param.value)));
  }

  void resolve_net(const NetStmt& s, Model& m) {
    if (!declare(net_names_, s.name, "net")) return;
    bool ok = true;
    std::set<std::string> used;
    std::vector<Stage> stages;

    auto make_node = [&](const NameRef& ref, std::size_t stage_index) -> std::optional<Node> {
      const auto fr = m.frs.find(ref.name);
      if (fr == m.frs.end()) {
        if (!broken_frs_.count(ref.name)) error(ref.pos, "unresolved fr '" + ref.name + "'");
        ok = false;
        return std::nullopt;
      }
      // repeated FRs get a stage-qualified id; '@' never occurs in names
      std::string id = ref.name;
      if (!used.insert(id).second) id += "@" + std::to_string(stage_index);
      return Node{id, fr->second, ref.name};
    };

    for (std::size_t k = 0; k < s.stages.size(); ++k) {
      const auto& st = s.stages[k];
      if (!st.parallel) {
        if (auto node = make_node(st.frs.front(), k)) stages.emplace_back(SequentialStage{*node});
        continue;
      }
      ParallelStage par;
      std::map<std::string, std::string> id_of;
      for (const auto& ref : st.frs) {
        if (id_of.count(ref.name)) {
          error(ref.pos, "fr '" + ref.name + "' appears twice in one parallel stage");
          ok = false;
          continue;
        }
        if (auto node = make_node(ref, k)) {
          id_of[ref.name] = node->id;
          par.nodes.push_back(std::move(*node));
        }
      }
      par.policy.kind = st.policy;
      if (st.policy == ArbitrationPolicy::Kind::Priority) {
        std::set<std::string> seen;
        for (const auto& ref : st.order) {
          const bool in_stage = std::any_of(st.frs.begin(), st.frs.end(),
                                            [&](const NameRef& r) { return r.name == ref.name; });
          if (!in_stage) {
            error(ref.pos, "priority lists '" + ref.name + "', which is not in this stage");
            ok = false;
          } else if (!seen.insert(ref.name).second) {
            error(ref.pos, "priority lists '" + ref.name + "' twice");
            ok = false;
          } else if (id_of.count(ref.name)) {
            par.policy.order.push_back(id_of[ref.name]);
          }
        }
        if (ok && seen.size() != id_of.size()) {
          error(st.pos, "priority must list every fr of its stage");
          ok = false;
        }
      }
      stages.emplace_back(std::move(par));
    }
    if (!ok) return;
    try {
      m.nets.emplace(s.name.name, Network(std::move(stages)));
    } catch (const ConfigurationError& e) {
      error(s.name.pos, "net '" + s.name.name + "': " + e.what());
    }
  }

  std::vector<Diagnostic>& diags_;
  std::set<std::string> domain_names_, family_names_, fr_names_, net_names_;
  std::set<std::string> broken_domains_, broken_families_, broken_frs_;
};

// ---------------------------------------------------------------------------
// Serialization helpers

std::string ref_of(const Node& n) { return n.ref.empty() ? n.id : n.ref; }

std::string rule_text(const FamilyRule& rule) {
  struct Text {
    std::string operator()(const AffineMod& r) const { return "affine_mod(a=" + std::to_string(r.a) + ")"; }
    std::string operator()(const MulMod&) const { return "mul_mod()"; }
    std::string operator()(const PolyMod& r) const { return "poly_mod(e=" + std::to_string(r.e) + ")"; }
    std::string operator()(const ThresholdMemory& r) const {
      return "threshold_memory(theta=" + std::to_string(r.theta) + ")";
    }
    std::string operator()(const QuantizedNeuron& r) const {
      return "quantized_neuron(s=" + std::to_string(r.s) + ")";
    }
    std::string operator()(const HybridMemory& r) const {
      return "hybrid_memory(theta=" + std::to_string(r.theta) + ", s=" + std::to_string(r.s) + ")";
    }
    std::string operator()(const ExplicitTable& r) const {
      std::string out = "table [";
      for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < r.rows[i].size(); ++j) {
          if (j) out += ' ';
          out += std::to_string(r.rows[i][j]);
        }
      }
      return out + "]";
    }
  };
  return std::visit(Text{}, rule);
}

std::string domain_text(const FiniteDomain& d) {
  if (d.has_null() && *d.null_index() + 1 != d.size())
    throw std::logic_error("domain '" + d.name() + "' has its null element in the middle");
  return "domain " + d.name() + " size " + std::to_string(d.value_count()) +
         (d.has_null() ? " null" : "");
}

bool same_node(const Node& a, const Node& b) {
  return a.id == b.id && ref_of(a) == ref_of(b) && a.fr.param() == b.fr.param() &&
         a.fr.family().name() == b.fr.family().name();
}

bool same_stage(const Stage& a, const Stage& b) {
  if (a.index() != b.index()) return false;
  if (const auto* sa = std::get_if<SequentialStage>(&a))
    return same_node(sa->node, std::get<SequentialStage>(b).node);
  const auto& pa = std::get<ParallelStage>(a);
  const auto& pb = std::get<ParallelStage>(b);
  return pa.policy == pb.policy && pa.nodes.size() == pb.nodes.size() &&
         std::equal(pa.nodes.begin(), pa.nodes.end(), pb.nodes.begin(), same_node);
}

}  // namespace

std::string format(const Diagnostic& d, std::string_view source_name) {
  std::ostringstream os;
  if (!source_name.empty()) os << source_name << ':';
  os << d.line << ':' << d.column << ": "
     << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

ParseResult parse_text(std::string_view source) {
  ParseResult result;
  auto& diags = result.diagnostics;
  Resolver resolver(diags);

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < source.size()) {
    ++line_no;
    const std::size_t nl = source.find('\n', start);
    const bool terminated = nl != std::string_view::npos;
    std::string_view line = source.substr(start, (terminated ? nl : source.size()) - start);
    start = terminated ? nl + 1 : source.size();
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    // end-of-line errors point just past the text
    const std::size_t end_col = line.size() + 1;
    std::vector<Token> toks;
    if (!LineLexer(line, line_no, end_col, diags).run(toks)) continue;
    if (toks.front().kind == Token::Kind::End) continue;

    StatementParser p(toks);
    try {
      const Token head = p.next();
      if (head.kind != Token::Kind::Ident) {
        throw SyntaxError{head.pos, "expected a statement keyword, found " + describe(head)};
      } else if (head.text == "domain") {
        resolver.domains.push_back(p.domain());
      } else if (head.text == "family") {
        resolver.families.push_back(p.family());
      } else if (head.text == "fr") {
        resolver.frs.push_back(p.fr());
      } else if (head.text == "net") {
        resolver.nets.push_back(p.net());
      } else {
        throw SyntaxError{head.pos, "unknown keyword '" + head.text + "'"};
      }
    } catch (const SyntaxError& e) {
      diags.push_back({Diagnostic::Severity::Error, e.pos.line, e.pos.column, e.message});
    }
  }

  Model model = resolver.resolve();
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.line != b.line ? a.line < b.line : a.column < b.column;
  });
  const bool failed = std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  });
  if (!failed) result.model = std::move(model);
  return result;
}

std::string serialize_family(const std::string& name, const ParamFamily& family) {
  return "family " + name + " over " + family.domain().name() + " = " + rule_text(family.rule());
}

std::string serialize_fr(const std::string& name, const FunctionRep& fr) {
  return "fr " + name + " = " + fr.family().name() + "(" + std::to_string(fr.param()) + ")";
}

std::string serialize_net(const std::string& name, const Network& net) {
  std::string out = "net " + name + " =";
  bool first_stage = true;
  for (const auto& stage : net.stages()) {
    out += first_stage ? " " : " -> ";
    first_stage = false;
    if (const auto* seq = std::get_if<SequentialStage>(&stage)) {
      out += ref_of(seq->node);
      continue;
    }
    const auto& par = std::get<ParallelStage>(stage);
    out += '[';
    for (std::size_t k = 0; k < par.nodes.size(); ++k) {
      if (k) out += " | ";
      out += ref_of(par.nodes[k]);
    }
    out += "] @";
    switch (par.policy.kind) {
      case ArbitrationPolicy::Kind::FirstNonNull: out += "first"; break;
      case ArbitrationPolicy::Kind::BestScore: out += "best"; break;
      case ArbitrationPolicy::Kind::Priority: {
        out += "priority(";
        for (std::size_t k = 0; k < par.policy.order.size(); ++k) {
          if (k) out += ", ";
          const auto& id = par.policy.order[k];
          const auto it = std::find_if(par.nodes.begin(), par.nodes.end(),
                                       [&](const Node& n) { return n.id == id; });
          out += it != par.nodes.end() ? ref_of(*it) : id;
        }
        out += ')';
        break;
      }
    }
  }
  return out;
}

std::string serialize(const Model& model) {
  std::string out;
  for (const auto& [name, d] : model.domains) {
    (void)name;
    out += domain_text(d) + "\n";
  }
  for (const auto& [name, f] : model.families) out += serialize_family(name, *f) + "\n";
  for (const auto& [name, fr] : model.frs) out += serialize_fr(name, fr) + "\n";
  for (const auto& [name, net] : model.nets) out += serialize_net(name, net) + "\n";
  return out;
}

bool structurally_equal(const Model& a, const Model& b) {
  if (a.domains != b.domains) return false;

  if (a.families.size() != b.families.size()) return false;
  for (const auto& [name, fa] : a.families) {
    const auto it = b.families.find(name);
    if (it == b.families.end()) return false;
    const auto& fb = *it->second;
    if (fa->name() != fb.name() || !(fa->domain() == fb.domain()) || !(fa->rule() == fb.rule()))
      return false;
  }

  if (a.frs.size() != b.frs.size()) return false;
  for (const auto& [name, fr] : a.frs) {
    const auto it = b.frs.find(name);
    if (it == b.frs.end() || it->second.param() != fr.param() ||
        it->second.family().name() != fr.family().name())
      return false;
  }

  if (a.nets.size() != b.nets.size()) return false;
  for (const auto& [name, na] : a.nets) {
    const auto it = b.nets.find(name);
    if (it == b.nets.end()) return false;
    const auto& sa = na.stages();
    const auto& sb = it->second.stages();
    if (sa.size() != sb.size() || !std::equal(sa.begin(), sa.end(), sb.begin(), same_stage))
      return false;
  }
  return true;
}

}  // namespace fnrep::dsl
