#pragma once

// Concept / axiom / ontology syntax over a declared operator set, with the
// line-oriented instance file format:
//
//   problem tsat
//   op not/1 = 10
//   axiom not(A) [= A
//   axiom A == some R . B        # two inclusions
//   assert some R . A(x)         # concept assertion
//   assert R(x, y)               # role assertion
//   concept A                    # query, at most once

#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subalc/boolfun.hpp"
#include "subalc/error.hpp"

namespace subalc {

struct Concept {
  enum class Kind { Atom, Apply, Exists, Forall };

  Kind kind = Kind::Atom;
  std::string name;  // atom, operator or role name
  std::vector<Concept> args;

  static Concept atom(std::string n) { return {Kind::Atom, std::move(n), {}}; }
  static Concept apply(std::string op, std::vector<Concept> a = {}) { return {Kind::Apply, std::move(op), std::move(a)}; }
  static Concept exists(std::string role, Concept c) { return {Kind::Exists, std::move(role), {std::move(c)}}; }
  static Concept forall(std::string role, Concept c) { return {Kind::Forall, std::move(role), {std::move(c)}}; }

  bool is_quantifier() const { return kind == Kind::Exists || kind == Kind::Forall; }
  const Concept& filler() const { return args.front(); }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : args) d = std::max(d, a.depth() + 1);
    return kind == Kind::Atom ? 0 : (args.empty() ? 0 : d);
  }

  friend bool operator==(const Concept& a, const Concept& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
  }
};

inline std::string to_string(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Atom:
      return c.name;
    case Concept::Kind::Apply: {
      if (c.args.empty()) return c.name;
      std::string s = c.name + "(";
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(c.args[i]);
      }
      return s + ")";
    }
    case Concept::Kind::Exists:
      return "some " + c.name + " . " + to_string(c.filler());
    case Concept::Kind::Forall:
      return "all " + c.name + " . " + to_string(c.filler());
  }
  return {};
}

struct Gci {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const Gci&, const Gci&) = default;
};

struct ConceptAssertion {
  Concept cls;
  std::string individual;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

struct RoleAssertion {
  std::string role;
  std::string from;
  std::string to;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

struct Ontology {
  std::vector<Gci> tbox;
  std::vector<Assertion> abox;

  bool empty() const { return tbox.empty() && abox.empty(); }
  friend bool operator==(const Ontology&, const Ontology&) = default;
};

class OperatorSet {
 public:
  OperatorSet() = default;
  OperatorSet(std::initializer_list<BoolFun> fs) {
    for (const auto& f : fs) add(f);
  }
  explicit OperatorSet(std::vector<BoolFun> fs) {
    for (auto& f : fs) add(std::move(f));
  }

  void add(BoolFun f) {
    if (find(f.name)) throw PreconditionError("duplicate operator name '" + f.name + "'");
    ops_.push_back(std::move(f));
  }

  const BoolFun* find(std::string_view name) const {
    for (const auto& f : ops_) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }

  // First operator computing the same function as `f`, whatever its name.
  const BoolFun* find_function(const BoolFun& f) const {
    for (const auto& g : ops_) {
      if (g.same_function(f)) return &g;
    }
    return nullptr;
  }

  const std::vector<BoolFun>& functions() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  friend bool operator==(const OperatorSet&, const OperatorSet&) = default;

 private:
  std::vector<BoolFun> ops_;
};

enum class ProblemKind { CSAT, TSAT, TCSAT, OSAT, OCSAT };

inline std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::CSAT: return "csat";
    case ProblemKind::TSAT: return "tsat";
    case ProblemKind::TCSAT: return "tcsat";
    case ProblemKind::OSAT: return "osat";
    case ProblemKind::OCSAT: return "ocsat";
  }
  return {};
}

inline std::optional<ProblemKind> problem_kind_from_string(std::string_view s) {
  if (s == "csat") return ProblemKind::CSAT;
  if (s == "tsat") return ProblemKind::TSAT;
  if (s == "tcsat") return ProblemKind::TCSAT;
  if (s == "osat") return ProblemKind::OSAT;
  if (s == "ocsat") return ProblemKind::OCSAT;
  return std::nullopt;
}

inline bool kind_has_query(ProblemKind k) {
  return k == ProblemKind::CSAT || k == ProblemKind::TCSAT || k == ProblemKind::OCSAT;
}

struct ProblemInstance {
  ProblemKind kind = ProblemKind::TSAT;
  OperatorSet ops;
  Ontology ontology;
  std::optional<Concept> query;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// ---------------------------------------------------------------------------
// Structural checks

// Describes why `inst` violates the instance invariants, or nullopt.
inline std::optional<std::string> instance_violation(const ProblemInstance& inst) {
  if (kind_has_query(inst.kind) != inst.query.has_value()) {
    return "problem " + to_string(inst.kind) + (inst.query ? " takes no query concept" : " requires a query concept");
  }
  if (inst.kind == ProblemKind::CSAT && !inst.ontology.empty()) return "problem csat takes no axioms";
  if ((inst.kind == ProblemKind::TSAT || inst.kind == ProblemKind::TCSAT) && !inst.ontology.abox.empty()) {
    return "problem " + to_string(inst.kind) + " takes no assertions";
  }
  std::optional<std::string> bad;
  auto walk = [&](auto&& self, const Concept& c) -> void {
    if (bad) return;
    if (c.kind == Concept::Kind::Apply) {
      const BoolFun* f = inst.ops.find(c.name);
      if (!f) {
        bad = "undeclared operator '" + c.name + "'";
      } else if (static_cast<std::size_t>(f->arity) != c.args.size()) {
        bad = "operator '" + c.name + "' applied to " + std::to_string(c.args.size()) + " arguments";
      }
    } else if (c.is_quantifier() && c.args.size() != 1) {
      bad = "malformed quantifier";
    }
    for (const auto& a : c.args) self(self, a);
  };
  for (const auto& g : inst.ontology.tbox) {
    walk(walk, g.lhs);
    walk(walk, g.rhs);
  }
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) walk(walk, ca->cls);
  }
  if (inst.query) walk(walk, *inst.query);
  return bad;
}

// Calls fn on every top-level concept of the instance: GCI sides, concept
// assertions, then the query.
template <typename Fn>
void for_each_root_concept(const ProblemInstance& inst, Fn&& fn) {
  for (const auto& g : inst.ontology.tbox) {
    fn(g.lhs);
    fn(g.rhs);
  }
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) fn(ca->cls);
  }
  if (inst.query) fn(*inst.query);
}

struct Signature {
  std::set<std::string> atoms;
  std::set<std::string> roles;
  std::set<std::string> individuals;
  std::set<std::string> operators;  // operator names actually applied

  bool uses(const std::string& s) const {
    return atoms.count(s) || roles.count(s) || individuals.count(s) || operators.count(s);
  }
};

inline Signature signature(const ProblemInstance& inst) {
  Signature sig;
  auto walk = [&](auto&& self, const Concept& c) -> void {
    switch (c.kind) {
      case Concept::Kind::Atom: sig.atoms.insert(c.name); break;
      case Concept::Kind::Apply: sig.operators.insert(c.name); break;
      default: sig.roles.insert(c.name); break;
    }
    for (const auto& a : c.args) self(self, a);
  };
  for_each_root_concept(inst, [&](const Concept& c) { walk(walk, c); });
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      sig.individuals.insert(ca->individual);
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      sig.roles.insert(ra.role);
      sig.individuals.insert(ra.from);
      sig.individuals.insert(ra.to);
    }
  }
  return sig;
}

// Hands out names that collide with nothing already in use.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const ProblemInstance& inst) {
    const auto sig = signature(inst);
    for (const auto* s : {&sig.atoms, &sig.roles, &sig.individuals, &sig.operators}) used_.insert(s->begin(), s->end());
    for (const auto& f : inst.ops) used_.insert(f.name);
  }

  void reserve(const std::string& n) { used_.insert(n); }

  std::string fresh(const std::string& base) {
    std::string n = base;
    for (int i = 1; used_.count(n); ++i) n = base + "_" + std::to_string(i);
    used_.insert(n);
    return n;
  }

 private:
  std::set<std::string> used_;
};

// All syntactic subconcepts, deduplicated, children before parents, in
// first-visit order over GCI sides, assertions and the query.
inline std::vector<Concept> subconcepts(const ProblemInstance& inst) {
  std::vector<Concept> out;
  std::set<std::string> seen;
  auto walk = [&](auto&& self, const Concept& c) -> void {
    for (const auto& a : c.args) self(self, a);
    if (seen.insert(to_string(c)).second) out.push_back(c);
  };
  for_each_root_concept(inst, [&](const Concept& c) { walk(walk, c); });
  return out;
}

struct OperatorViolation {
  std::string op;
  std::string reason;
};

// Every applied operator must compute a function present in `allowed`.
inline std::vector<OperatorViolation> validate_operator_usage(const ProblemInstance& inst, const OperatorSet& allowed) {
  std::vector<OperatorViolation> out;
  std::set<std::string> reported;
  auto walk = [&](auto&& self, const Concept& c) -> void {
    if (c.kind == Concept::Kind::Apply && !reported.count(c.name)) {
      const BoolFun* f = inst.ops.find(c.name);
      if (!f) {
        out.push_back({c.name, "not declared by the instance"});
        reported.insert(c.name);
      } else if (!allowed.find_function(*f)) {
        out.push_back({c.name, "function " + f->table_string() + "/" + std::to_string(f->arity) +
                                   " not in the allowed operator set"});
        reported.insert(c.name);
      }
    }
    for (const auto& a : c.args) self(self, a);
  };
  for_each_root_concept(inst, [&](const Concept& c) { walk(walk, c); });
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

struct Token {
  enum class Type { Name, Number, LParen, RParen, Comma, Dot, Slash, Eq, Subsumed, Equiv, End };
  Type type = Type::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_name_char(src[j])) ++j;
      t.type = Token::Type::Name;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Token::Type::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '[' && i + 1 < src.size() && src[i + 1] == '=') {
      t.type = Token::Type::Subsumed;
      t.text = "[=";
      advance(2);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      t.type = Token::Type::Equiv;
      t.text = "==";
      advance(2);
    } else {
      switch (c) {
        case '(': t.type = Token::Type::LParen; break;
        case ')': t.type = Token::Type::RParen; break;
        case ',': t.type = Token::Type::Comma; break;
        case '.': t.type = Token::Type::Dot; break;
        case '/': t.type = Token::Type::Slash; break;
        case '=': t.type = Token::Type::Eq; break;
        default:
          throw ParseError(ParseErrorKind::Syntax, std::string("unexpected character '") + c + "'", line, col);
      }
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

inline bool is_keyword(const std::string& s) {
  return s == "problem" || s == "op" || s == "axiom" || s == "assert" || s == "concept" || s == "some" || s == "all";
}

class InstanceParser {
 public:
  explicit InstanceParser(std::string_view src) : toks_(tokenize(src)) {}

  ProblemInstance parse() {
    ProblemInstance inst;
    expect_keyword("problem");
    const Token& k = expect(Token::Type::Name, "problem kind");
    auto kind = problem_kind_from_string(k.text);
    if (!kind) fail(ParseErrorKind::Syntax, "unknown problem kind '" + k.text + "'", k);
    inst.kind = *kind;

    while (at_keyword("op")) parse_op_decl(inst.ops);
    ops_ = &inst.ops;

    const Token* query_tok = nullptr;
    while (peek().type != Token::Type::End) {
      const Token& t = peek();
      if (at_keyword("axiom")) {
        next();
        Concept lhs = parse_concept();
        const Token& rel = peek();
        if (rel.type == Token::Type::Subsumed) {
          next();
          inst.ontology.tbox.push_back({lhs, parse_concept()});
        } else if (rel.type == Token::Type::Equiv) {
          next();
          Concept rhs = parse_concept();
          inst.ontology.tbox.push_back({lhs, rhs});
          inst.ontology.tbox.push_back({rhs, lhs});
        } else {
          unexpected("'[=' or '=='");
        }
      } else if (at_keyword("assert")) {
        next();
        inst.ontology.abox.push_back(parse_assertion());
      } else if (at_keyword("concept")) {
        next();
        if (query_tok) fail(ParseErrorKind::QueryKindMismatch, "second query concept", t);
        query_tok = &t;
        inst.query = parse_concept();
      } else if (t.type == Token::Type::Name && t.text == "op") {
        fail(ParseErrorKind::Syntax, "operator declarations must precede axioms", t);
      } else {
        unexpected("'axiom', 'assert' or 'concept'");
      }
      end_of_item();
    }

    const Token& end = peek();
    if (kind_has_query(inst.kind) && !inst.query) {
      fail(ParseErrorKind::QueryKindMismatch, "problem " + to_string(inst.kind) + " requires a 'concept' line", end);
    }
    if (!kind_has_query(inst.kind) && inst.query) {
      fail(ParseErrorKind::QueryKindMismatch, "problem " + to_string(inst.kind) + " takes no query", *query_tok);
    }
    if (inst.kind == ProblemKind::CSAT && !inst.ontology.empty()) {
      fail(ParseErrorKind::QueryKindMismatch, "problem csat takes no axioms or assertions", end);
    }
    if ((inst.kind == ProblemKind::TSAT || inst.kind == ProblemKind::TCSAT) && !inst.ontology.abox.empty()) {
      fail(ParseErrorKind::QueryKindMismatch, "problem " + to_string(inst.kind) + " takes no assertions", end);
    }
    return inst;
  }

  OperatorSet parse_ops_only() {
    OperatorSet ops;
    while (at_keyword("op")) parse_op_decl(ops);
    if (peek().type != Token::Type::End) unexpected("'op'");
    return ops;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg, const Token& at) const {
    throw ParseError(kind, msg, at.line, at.column);
  }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    if (t.type == Token::Type::LParen && undeclared_ && undeclared_pos_ + 1 == pos_) {
      fail(ParseErrorKind::UndeclaredOperator, "undeclared operator '" + *undeclared_ + "'", toks_[undeclared_pos_]);
    }
    const std::string got = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    fail(ParseErrorKind::Syntax, "expected " + wanted + ", got " + got, t);
  }

  bool at_keyword(const char* kw) const {
    const Token& t = peek();
    return t.type == Token::Type::Name && t.text == kw;
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) unexpected(std::string("'") + kw + "'");
    next();
  }

  const Token& expect(Token::Type type, const std::string& what) {
    if (peek().type != type) unexpected(what);
    return next();
  }

  void end_of_item() {
    const Token& t = peek();
    if (t.type == Token::Type::End) return;
    if (t.type == Token::Type::Name && is_keyword(t.text) && t.text != "some" && t.text != "all") return;
    unexpected("end of item");
  }

  void parse_op_decl(OperatorSet& ops) {
    next();
    const Token& name = expect(Token::Type::Name, "operator name");
    if (is_keyword(name.text)) fail(ParseErrorKind::Syntax, "keyword '" + name.text + "' used as operator name", name);
    if (name.text.front() == '_') {
      fail(ParseErrorKind::ReservedPrefix, "operator name '" + name.text + "' uses the reserved '_' prefix", name);
    }
    expect(Token::Type::Slash, "'/'");
    const Token& ar = expect(Token::Type::Number, "arity");
    expect(Token::Type::Eq, "'='");
    const Token& tab = expect(Token::Type::Number, "truth table");
    const int arity = ar.text.size() > 2 ? kArityCap + 1 : std::stoi(ar.text);
    if (arity > kArityCap) {
      fail(ParseErrorKind::ArityMismatch, "arity " + ar.text + " exceeds cap " + std::to_string(kArityCap), ar);
    }
    const std::size_t rows = std::size_t{1} << arity;
    if (tab.text.size() != rows) {
      fail(ParseErrorKind::ArityMismatch,
           "table length " + std::to_string(tab.text.size()) + " != " + std::to_string(rows) + " for arity " + ar.text,
           tab);
    }
    if (tab.text.find_first_not_of("01") != std::string::npos) {
      fail(ParseErrorKind::Syntax, "truth table must consist of 0 and 1", tab);
    }
    if (ops.find(name.text)) fail(ParseErrorKind::DuplicateOperator, "duplicate operator '" + name.text + "'", name);
    ops.add(BoolFun::from_string(name.text, arity, tab.text));
  }

  Concept parse_concept() {
    const Token& t = peek();
    if (t.type == Token::Type::LParen) {
      next();
      Concept c = parse_concept();
      expect(Token::Type::RParen, "')'");
      return c;
    }
    if (t.type != Token::Type::Name) unexpected("concept");
    if (t.text == "some" || t.text == "all") {
      next();
      const Token& role = expect(Token::Type::Name, "role name");
      if (is_keyword(role.text)) fail(ParseErrorKind::Syntax, "keyword '" + role.text + "' used as role", role);
      expect(Token::Type::Dot, "'.'");
      Concept filler = parse_concept();
      return t.text == "some" ? Concept::exists(role.text, std::move(filler))
                              : Concept::forall(role.text, std::move(filler));
    }
    if (is_keyword(t.text)) unexpected("concept");
    const std::size_t name_pos = pos_;
    next();
    const BoolFun* op = ops_->find(t.text);
    if (!op) {
      undeclared_ = t.text;
      undeclared_pos_ = name_pos;
      return Concept::atom(t.text);
    }
    if (op->arity == 0) return Concept::apply(t.text);
    if (peek().type != Token::Type::LParen) {
      fail(ParseErrorKind::ArityMismatch, "operator '" + t.text + "' expects " + std::to_string(op->arity) + " arguments", t);
    }
    next();
    std::vector<Concept> args;
    args.push_back(parse_concept());
    while (peek().type == Token::Type::Comma) {
      next();
      args.push_back(parse_concept());
    }
    expect(Token::Type::RParen, "')'");
    if (static_cast<int>(args.size()) != op->arity) {
      fail(ParseErrorKind::ArityMismatch,
           "operator '" + t.text + "' expects " + std::to_string(op->arity) + " arguments, got " +
               std::to_string(args.size()),
           t);
    }
    return Concept::apply(t.text, std::move(args));
  }

  Assertion parse_assertion() {
    const Token& t0 = peek();
    if (t0.type == Token::Type::Name && !is_keyword(t0.text) && !ops_->find(t0.text) &&
        peek(1).type == Token::Type::LParen && peek(2).type == Token::Type::Name &&
        peek(3).type == Token::Type::Comma) {
      next();
      next();
      const Token& a = next();
      next();
      const Token& b = expect(Token::Type::Name, "individual name");
      expect(Token::Type::RParen, "')'");
      return RoleAssertion{t0.text, a.text, b.text};
    }
    Concept c = parse_concept();
    undeclared_.reset();
    expect(Token::Type::LParen, "'(' individual ')'");
    const Token& ind = expect(Token::Type::Name, "individual name");
    expect(Token::Type::RParen, "')'");
    return ConceptAssertion{std::move(c), ind.text};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const OperatorSet* ops_ = nullptr;
  std::optional<std::string> undeclared_;
  std::size_t undeclared_pos_ = 0;
};

}  // namespace detail

inline ProblemInstance parse_instance(std::string_view text) { return detail::InstanceParser(text).parse(); }

inline ProblemInstance parse_instance(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

// A file holding only `op` declarations.
inline OperatorSet parse_operator_set(std::string_view text) { return detail::InstanceParser(text).parse_ops_only(); }

inline std::string op_declaration(const BoolFun& f) {
  return "op " + f.name + "/" + std::to_string(f.arity) + " = " + f.table_string();
}

inline std::string print_operator_set(const OperatorSet& ops) {
  std::string s;
  for (const auto& f : ops) s += op_declaration(f) + "\n";
  return s;
}

inline std::string print_instance(const ProblemInstance& inst) {
  std::string s = "problem " + to_string(inst.kind) + "\n";
  s += print_operator_set(inst.ops);
  for (const auto& g : inst.ontology.tbox) s += "axiom " + to_string(g.lhs) + " [= " + to_string(g.rhs) + "\n";
  for (const auto& a : inst.ontology.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      s += "assert " + to_string(ca->cls) + "(" + ca->individual + ")\n";
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      s += "assert " + ra.role + "(" + ra.from + ", " + ra.to + ")\n";
    }
  }
  if (inst.query) s += "concept " + to_string(*inst.query) + "\n";
  return s;
}

}  // namespace subalc
