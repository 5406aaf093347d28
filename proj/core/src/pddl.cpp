#include "plandiv/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace plandiv {

namespace {

enum class TokKind { LParen, RParen, Symbol, End };

struct Token {
  TokKind kind;
  std::string text;
  SourcePos pos;
};

/// Splits a PDDL text into parens and symbols. Identifiers are
/// case-insensitive, so symbols are lowercased here once and for all.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    SourcePos pos{line_, col_};
    if (at_end()) return {TokKind::End, "", pos};
    char c = text_[i_];
    if (c == '(') {
      advance();
      return {TokKind::LParen, "(", pos};
    }
    if (c == ')') {
      advance();
      return {TokKind::RParen, ")", pos};
    }
    std::string sym;
    while (!at_end() && !is_delim(text_[i_])) {
      sym.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(text_[i_]))));
      advance();
    }
    return {TokKind::Symbol, sym, pos};
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_ws_and_comments() {
    while (!at_end()) {
      char c = text_[i_];
      if (c == ';') {
        while (!at_end() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

/// Token cursor with one-token lookahead and error helpers.
class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { cur_ = lexer_.next(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    cur_ = lexer_.next();
    return t;
  }

  Token expect(TokKind kind, const std::string& what) {
    if (cur_.kind != kind)
      fail("expected " + what + ", found '" + describe(cur_) + "'", cur_.pos);
    return take();
  }

  std::string expect_symbol(const std::string& what) {
    return expect(TokKind::Symbol, what).text;
  }

  bool at(TokKind kind) const { return cur_.kind == kind; }

  bool at_keyword(std::string_view kw) const {
    return cur_.kind == TokKind::Symbol && cur_.text == kw;
  }

  [[noreturn]] void fail(const std::string& msg, SourcePos pos) const {
    throw ParseError(msg, pos);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokKind::LParen: return "(";
      case TokKind::RParen: return ")";
      case TokKind::End: return "end of input";
      default: return t.text;
    }
  }

 private:
  Lexer lexer_;
  Token cur_;
};

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

/// Parses "name name - type name - type ..." until ')'. Variables allowed
/// only when `variables` is set (parameter lists), else plain names.
std::vector<TypedName> parse_typed_list(Parser& p, bool variables,
                                        const std::string& what) {
  std::vector<TypedName> out;
  std::size_t group_start = 0;
  while (!p.at(TokKind::RParen)) {
    Token t = p.expect(TokKind::Symbol, what + " name");
    if (t.text == "-") {
      if (group_start == out.size())
        p.fail("type marker '-' without preceding names", t.pos);
      if (p.at(TokKind::LParen)) {
        Token open = p.take();
        p.fail(p.at_keyword("either")
                   ? "unsupported construct (either ...) in typed list"
                   : "expected type name, found '('",
               p.at(TokKind::Symbol) ? p.peek().pos : open.pos);
      }
      Token ty = p.expect(TokKind::Symbol, "type name");
      if (ty.text == "either")
        p.fail("unsupported construct (either ...) in typed list", ty.pos);
      for (std::size_t k = group_start; k < out.size(); ++k)
        out[k].type = ty.text;
      group_start = out.size();
      continue;
    }
    if (is_variable(t.text) != variables)
      p.fail(variables ? "expected variable, found '" + t.text + "'"
                       : "expected name, found variable '" + t.text + "'",
             t.pos);
    out.push_back({t.text, "object"});
  }
  return out;
}

const std::set<std::string> kSupportedRequirements = {
    ":strips", ":typing", ":equality", ":negative-preconditions"};

void parse_requirements(Parser& p) {
  while (!p.at(TokKind::RParen)) {
    Token t = p.expect(TokKind::Symbol, "requirement flag");
    if (!kSupportedRequirements.count(t.text))
      p.fail("unsupported requirement " + t.text, t.pos);
  }
}

/// Resolves the type of a term appearing in a schema body: a declared
/// parameter variable or a domain constant.
std::string term_type(Parser& p, const DomainModel& dom,
                      const std::vector<TypedName>& vars,
                      const std::string& term, SourcePos pos) {
  if (is_variable(term)) {
    for (const TypedName& v : vars)
      if (v.name == term) return v.type;
    p.fail("undeclared variable " + term, pos);
  }
  for (const TypedName& c : dom.constants)
    if (c.name == term) return c.type;
  p.fail("unknown constant " + term, pos);
}

/// Parses the remainder of "(pred arg ... )" after the '(' was consumed,
/// checking the predicate declaration: existence, arity, argument typing.
/// Equality "=" is built in: exactly two arguments, any types.
Atom parse_atom_body(Parser& p, const DomainModel& dom,
                     const std::vector<TypedName>& vars) {
  Token name = p.expect(TokKind::Symbol, "predicate name");
  Atom atom;
  atom.pred = name.text;
  std::vector<SourcePos> arg_pos;
  while (!p.at(TokKind::RParen)) {
    Token arg = p.expect(TokKind::Symbol, "argument");
    atom.args.push_back(arg.text);
    arg_pos.push_back(arg.pos);
  }
  p.expect(TokKind::RParen, "')'");

  if (atom.pred == "=") {
    if (atom.args.size() != 2)
      p.fail("equality takes exactly two arguments", name.pos);
    for (std::size_t k = 0; k < 2; ++k)
      term_type(p, dom, vars, atom.args[k], arg_pos[k]);  // existence only
    return atom;
  }
  const Predicate* decl = dom.find_predicate(atom.pred);
  if (!decl) p.fail("unknown predicate " + atom.pred, name.pos);
  if (decl->params.size() != atom.args.size())
    p.fail("predicate " + atom.pred + " expects " +
               std::to_string(decl->params.size()) + " arguments, got " +
               std::to_string(atom.args.size()),
           name.pos);
  for (std::size_t k = 0; k < atom.args.size(); ++k) {
    std::string ty = term_type(p, dom, vars, atom.args[k], arg_pos[k]);
    if (!dom.types.is_subtype(ty, decl->params[k].type))
      p.fail("type mismatch: argument " + atom.args[k] + " of " + atom.pred +
                 " has type " + ty + ", expected " + decl->params[k].type,
             arg_pos[k]);
  }
  return atom;
}

const std::set<std::string> kUnsupportedHeads = {
    "or", "imply", "exists", "forall", "when",
    "increase", "decrease", "assign", "oneof"};

/// Precondition grammar: atom | (not atom) | (= t t) | (and GD*) | ().
void parse_precondition(Parser& p, const DomainModel& dom,
                        const std::vector<TypedName>& vars,
                        std::vector<Literal>& out) {
  p.expect(TokKind::LParen, "precondition");
  if (p.at(TokKind::RParen)) {  // "()" — empty precondition
    p.take();
    return;
  }
  if (p.at_keyword("and")) {
    p.take();
    while (!p.at(TokKind::RParen)) parse_precondition(p, dom, vars, out);
    p.expect(TokKind::RParen, "')'");
    return;
  }
  if (p.at_keyword("not")) {
    p.take();
    p.expect(TokKind::LParen, "'('");
    Atom atom = parse_atom_body(p, dom, vars);
    p.expect(TokKind::RParen, "')'");
    out.push_back({std::move(atom), true});
    return;
  }
  if (p.at(TokKind::Symbol) && kUnsupportedHeads.count(p.peek().text))
    p.fail("unsupported construct (" + p.peek().text + " ...) in precondition",
           p.peek().pos);
  out.push_back({parse_atom_body(p, dom, vars), false});
}

/// Effect grammar: atom | (not atom) | (and EFF*) | ().
void parse_effect(Parser& p, const DomainModel& dom,
                  const std::vector<TypedName>& vars, std::vector<Atom>& add,
                  std::vector<Atom>& del) {
  p.expect(TokKind::LParen, "effect");
  if (p.at(TokKind::RParen)) {  // "()"
    p.take();
    return;
  }
  if (p.at_keyword("and")) {
    p.take();
    while (!p.at(TokKind::RParen)) parse_effect(p, dom, vars, add, del);
    p.expect(TokKind::RParen, "')'");
    return;
  }
  bool negated = false;
  if (p.at_keyword("not")) {
    p.take();
    p.expect(TokKind::LParen, "'('");
    negated = true;
  } else if (p.at(TokKind::Symbol) && kUnsupportedHeads.count(p.peek().text)) {
    p.fail("unsupported construct (" + p.peek().text + " ...) in effect",
           p.peek().pos);
  }
  SourcePos pos = p.peek().pos;
  Atom atom = parse_atom_body(p, dom, vars);
  if (atom.pred == "=") p.fail("equality cannot appear in effects", pos);
  if (negated) {
    p.expect(TokKind::RParen, "')'");
    del.push_back(std::move(atom));
  } else {
    add.push_back(std::move(atom));
  }
}

ActionSchema parse_action(Parser& p, const DomainModel& dom) {
  ActionSchema schema;
  Token name = p.expect(TokKind::Symbol, "action name");
  schema.name = name.text;
  bool saw_params = false, saw_pre = false, saw_eff = false;
  while (!p.at(TokKind::RParen)) {
    Token key = p.expect(TokKind::Symbol, ":parameters/:precondition/:effect");
    if (key.text == ":parameters") {
      if (saw_params) p.fail("duplicate :parameters", key.pos);
      saw_params = true;
      p.expect(TokKind::LParen, "'('");
      schema.params = parse_typed_list(p, /*variables=*/true, "parameter");
      p.expect(TokKind::RParen, "')'");
      std::set<std::string> seen;
      for (const TypedName& v : schema.params) {
        if (!seen.insert(v.name).second)
          p.fail("duplicate parameter " + v.name + " in action " + schema.name,
                 key.pos);
        if (!dom.types.declared(v.type))
          p.fail("undeclared type " + v.type + " in action " + schema.name,
                 key.pos);
      }
    } else if (key.text == ":precondition") {
      if (saw_pre) p.fail("duplicate :precondition", key.pos);
      saw_pre = true;
      parse_precondition(p, dom, schema.params, schema.precond);
    } else if (key.text == ":effect") {
      if (saw_eff) p.fail("duplicate :effect", key.pos);
      saw_eff = true;
      parse_effect(p, dom, schema.params, schema.add, schema.del);
    } else {
      p.fail("unsupported action field " + key.text, key.pos);
    }
  }
  p.expect(TokKind::RParen, "')'");
  // Normalize: dedupe effects; an atom both added and deleted is an add,
  // matching "(s \ del) ∪ add" semantics.
  auto dedupe = [](std::vector<Atom>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(schema.add);
  dedupe(schema.del);
  std::vector<Atom> kept;
  for (Atom& d : schema.del)
    if (!std::binary_search(schema.add.begin(), schema.add.end(), d))
      kept.push_back(std::move(d));
  schema.del = std::move(kept);
  return schema;
}

}  // namespace

TypeHierarchy::TypeHierarchy() { parent_["object"] = ""; }

void TypeHierarchy::declare(const std::string& type, const std::string& parent) {
  if (type == "object") return;
  parent_[type] = parent;
}

bool TypeHierarchy::declared(const std::string& type) const {
  return parent_.count(type) != 0;
}

bool TypeHierarchy::is_subtype(const std::string& type,
                               const std::string& ancestor) const {
  std::string cur = type;
  while (true) {
    if (cur == ancestor) return true;
    auto it = parent_.find(cur);
    if (it == parent_.end() || it->second.empty()) return false;
    cur = it->second;
  }
}

const Predicate* DomainModel::find_predicate(std::string_view name) const {
  for (const Predicate& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const ActionSchema* DomainModel::find_schema(std::string_view name) const {
  for (const ActionSchema& s : schemas)
    if (s.name == name) return &s;
  return nullptr;
}

std::string step_signature(const PlanStep& step) {
  if (step.args.empty()) return step.action;
  std::string sig = step.action;
  sig.push_back('(');
  for (std::size_t i = 0; i < step.args.size(); ++i) {
    if (i) sig.push_back(',');
    sig += step.args[i];
  }
  sig.push_back(')');
  return sig;
}

std::string atom_signature(const Atom& atom) {
  if (atom.args.empty()) return atom.pred;
  std::string sig = atom.pred;
  sig.push_back('(');
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) sig.push_back(',');
    sig += atom.args[i];
  }
  sig.push_back(')');
  return sig;
}

DomainModel parse_domain(std::string_view text) {
  Parser p(text);
  DomainModel dom;
  p.expect(TokKind::LParen, "'('");
  if (p.expect_symbol("'define'") != "define")
    p.fail("expected 'define'", p.peek().pos);
  p.expect(TokKind::LParen, "'('");
  if (p.expect_symbol("'domain'") != "domain")
    p.fail("expected '(domain ...)'", p.peek().pos);
  dom.name = p.expect_symbol("domain name");
  p.expect(TokKind::RParen, "')'");

  while (!p.at(TokKind::RParen)) {
    p.expect(TokKind::LParen, "domain section");
    Token key = p.expect(TokKind::Symbol, "section keyword");
    if (key.text == ":requirements") {
      parse_requirements(p);
      p.expect(TokKind::RParen, "')'");
    } else if (key.text == ":types") {
      // Typed list where the group type is the parent type.
      std::vector<TypedName> decls = parse_typed_list(p, false, "type");
      p.expect(TokKind::RParen, "')'");
      for (const TypedName& d : decls) {
        if (dom.types.declared(d.name))
          p.fail("duplicate type " + d.name, key.pos);
        dom.types.declare(d.name, d.type);
      }
      for (const TypedName& d : decls)
        if (!dom.types.declared(d.type))
          p.fail("undeclared parent type " + d.type, key.pos);
    } else if (key.text == ":constants") {
      std::vector<TypedName> decls = parse_typed_list(p, false, "constant");
      p.expect(TokKind::RParen, "')'");
      for (TypedName& d : decls) {
        if (!dom.types.declared(d.type))
          p.fail("undeclared type " + d.type + " for constant " + d.name,
                 key.pos);
        for (const TypedName& c : dom.constants)
          if (c.name == d.name) p.fail("duplicate constant " + d.name, key.pos);
        dom.constants.push_back(std::move(d));
      }
    } else if (key.text == ":predicates") {
      while (!p.at(TokKind::RParen)) {
        p.expect(TokKind::LParen, "predicate declaration");
        Token name = p.expect(TokKind::Symbol, "predicate name");
        if (name.text == "=")
          p.fail("predicate '=' is built in and cannot be declared", name.pos);
        Predicate pred;
        pred.name = name.text;
        pred.params = parse_typed_list(p, true, "parameter");
        p.expect(TokKind::RParen, "')'");
        for (const TypedName& v : pred.params)
          if (!dom.types.declared(v.type))
            p.fail("undeclared type " + v.type + " in predicate " + pred.name,
                   name.pos);
        if (dom.find_predicate(pred.name))
          p.fail("duplicate predicate " + pred.name, name.pos);
        dom.predicates.push_back(std::move(pred));
      }
      p.expect(TokKind::RParen, "')'");
    } else if (key.text == ":action") {
      ActionSchema schema = parse_action(p, dom);
      if (dom.find_schema(schema.name))
        p.fail("duplicate action " + schema.name, key.pos);
      dom.schemas.push_back(std::move(schema));
    } else if (key.text == ":functions" || key.text == ":durative-action" ||
               key.text == ":derived" || key.text == ":axioms") {
      p.fail("unsupported section " + key.text, key.pos);
    } else {
      p.fail("unknown domain section " + key.text, key.pos);
    }
  }
  p.expect(TokKind::RParen, "')'");
  if (!p.at(TokKind::End))
    p.fail("trailing text after domain definition", p.peek().pos);
  return dom;
}

namespace {

/// Type of a problem-level constant (problem object or domain constant).
std::optional<std::string> constant_type(const DomainModel& dom,
                                         const ProblemModel& prob,
                                         const std::string& name) {
  for (const TypedName& o : prob.objects)
    if (o.name == name) return o.type;
  for (const TypedName& c : dom.constants)
    if (c.name == name) return c.type;
  return std::nullopt;
}

/// Parses "pred arg ... )" with the opening paren already consumed,
/// validating against the predicate declaration and the object pool.
Atom parse_ground_atom_body(Parser& p, const DomainModel& dom,
                            const ProblemModel& prob, const char* where) {
  Token name = p.expect(TokKind::Symbol, "predicate name");
  if (name.text == "not" || name.text == "and" ||
      kUnsupportedHeads.count(name.text))
    p.fail(std::string("unsupported ") + where + " form (" + name.text +
               " ...)",
           name.pos);
  if (name.text == "=")
    p.fail(std::string("equality is not allowed in ") + where, name.pos);
  Atom atom;
  atom.pred = name.text;
  std::vector<SourcePos> arg_pos;
  while (!p.at(TokKind::RParen)) {
    Token arg = p.expect(TokKind::Symbol, "argument");
    if (is_variable(arg.text))
      p.fail(std::string("variable '") + arg.text + "' not allowed in " + where,
             arg.pos);
    atom.args.push_back(arg.text);
    arg_pos.push_back(arg.pos);
  }
  p.expect(TokKind::RParen, "')'");
  const Predicate* decl = dom.find_predicate(atom.pred);
  if (!decl) p.fail("unknown predicate " + atom.pred, name.pos);
  if (decl->params.size() != atom.args.size())
    p.fail("predicate " + atom.pred + " expects " +
               std::to_string(decl->params.size()) + " arguments, got " +
               std::to_string(atom.args.size()),
           name.pos);
  for (std::size_t k = 0; k < atom.args.size(); ++k) {
    auto ty = constant_type(dom, prob, atom.args[k]);
    if (!ty) p.fail("unknown constant " + atom.args[k], arg_pos[k]);
    if (!dom.types.is_subtype(*ty, decl->params[k].type))
      p.fail("type mismatch: argument " + atom.args[k] + " of " + atom.pred +
                 " has type " + *ty + ", expected " + decl->params[k].type,
             arg_pos[k]);
  }
  return atom;
}

Atom parse_ground_atom(Parser& p, const DomainModel& dom,
                       const ProblemModel& prob, const char* where) {
  p.expect(TokKind::LParen, "'('");
  return parse_ground_atom_body(p, dom, prob, where);
}

}  // namespace

ProblemModel parse_problem(std::string_view text, const DomainModel& dom) {
  Parser p(text);
  ProblemModel prob;
  p.expect(TokKind::LParen, "'('");
  if (p.expect_symbol("'define'") != "define")
    p.fail("expected 'define'", p.peek().pos);
  p.expect(TokKind::LParen, "'('");
  if (p.expect_symbol("'problem'") != "problem")
    p.fail("expected '(problem ...)'", p.peek().pos);
  prob.name = p.expect_symbol("problem name");
  p.expect(TokKind::RParen, "')'");

  bool saw_domain = false, saw_goal = false;
  while (!p.at(TokKind::RParen)) {
    p.expect(TokKind::LParen, "problem section");
    Token key = p.expect(TokKind::Symbol, "section keyword");
    if (key.text == ":domain") {
      Token name = p.expect(TokKind::Symbol, "domain name");
      if (name.text != dom.name)
        p.fail("problem declares domain '" + name.text + "', expected '" +
                   dom.name + "'",
               name.pos);
      p.expect(TokKind::RParen, "')'");
      saw_domain = true;
    } else if (key.text == ":requirements") {
      parse_requirements(p);
      p.expect(TokKind::RParen, "')'");
    } else if (key.text == ":objects") {
      std::vector<TypedName> decls = parse_typed_list(p, false, "object");
      p.expect(TokKind::RParen, "')'");
      for (TypedName& d : decls) {
        if (!dom.types.declared(d.type))
          p.fail("undeclared type " + d.type + " for object " + d.name,
                 key.pos);
        if (constant_type(dom, prob, d.name))
          p.fail("duplicate object " + d.name, key.pos);
        prob.objects.push_back(std::move(d));
      }
    } else if (key.text == ":init") {
      while (!p.at(TokKind::RParen)) {
        Atom atom = parse_ground_atom(p, dom, prob, "init");
        if (std::find(prob.init.begin(), prob.init.end(), atom) ==
            prob.init.end())
          prob.init.push_back(std::move(atom));
      }
      p.expect(TokKind::RParen, "')'");
    } else if (key.text == ":goal") {
      if (saw_goal) p.fail("duplicate :goal section", key.pos);
      saw_goal = true;
      // (:goal (and atom*)) or (:goal atom); anything else is outside the
      // fragment. The textual order of conjuncts is preserved.
      Token open = p.expect(TokKind::LParen, "goal");
      if (p.at_keyword("and")) {
        p.take();
        while (!p.at(TokKind::RParen)) {
          Atom atom = parse_ground_atom(p, dom, prob, "goal");
          if (std::find(prob.goal.begin(), prob.goal.end(), atom) ==
              prob.goal.end())
            prob.goal.push_back(std::move(atom));
        }
        p.expect(TokKind::RParen, "')'");
      } else {
        if (p.at(TokKind::Symbol) &&
            (p.peek().text == "not" || kUnsupportedHeads.count(p.peek().text)))
          p.fail("unsupported goal form (" + p.peek().text + " ...)",
                 p.peek().pos);
        prob.goal.push_back(parse_ground_atom_body(p, dom, prob, "goal"));
      }
      p.expect(TokKind::RParen, "')'");
      (void)open;
    } else if (key.text == ":metric" || key.text == ":constraints" ||
               key.text == ":length") {
      p.fail("unsupported section " + key.text, key.pos);
    } else {
      p.fail("unknown problem section " + key.text, key.pos);
    }
  }
  p.expect(TokKind::RParen, "')'");
  if (!p.at(TokKind::End))
    p.fail("trailing text after problem definition", p.peek().pos);
  if (!saw_domain)
    throw ParseError("problem lacks a (:domain ...) section", {1, 1});
  return prob;
}

Plan parse_plan(std::string_view text, const DomainModel& dom,
                const ProblemModel& prob) {
  Plan plan;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    std::size_t semi = line.find(';');
    if (semi != std::string_view::npos) line = line.substr(0, semi);
    std::size_t b = line.find_first_not_of(" \t\r\f\v");
    if (b == std::string_view::npos) {
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
      continue;
    }
    std::size_t e = line.find_last_not_of(" \t\r\f\v");
    line = line.substr(b, e - b + 1);
    int col = static_cast<int>(b) + 1;

    if (line.front() != '(' || line.back() != ')')
      throw ParseError("expected '(name arg ...)' plan step", {line_no, col});
    std::string_view body = line.substr(1, line.size() - 2);
    if (body.find('(') != std::string_view::npos ||
        body.find(')') != std::string_view::npos)
      throw ParseError("nested parentheses in plan step", {line_no, col});

    PlanStep step;
    std::istringstream words{std::string(body)};
    std::string w;
    bool first = true;
    while (words >> w) {
      std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
      if (first) {
        step.action = w;
        first = false;
      } else {
        step.args.push_back(w);
      }
    }
    if (first) throw ParseError("empty plan step", {line_no, col});

    const ActionSchema* schema = dom.find_schema(step.action);
    if (!schema)
      throw ParseError("unknown action " + step.action, {line_no, col});
    if (schema->params.size() != step.args.size())
      throw ParseError(
          "action " + step.action + " expects " +
              std::to_string(schema->params.size()) + " arguments, got " +
              std::to_string(step.args.size()),
          {line_no, col});
    for (std::size_t k = 0; k < step.args.size(); ++k) {
      auto ty = constant_type(dom, prob, step.args[k]);
      if (!ty)
        throw ParseError("unknown constant " + step.args[k], {line_no, col});
      if (!dom.types.is_subtype(*ty, schema->params[k].type))
        throw ParseError("type mismatch: argument " + step.args[k] + " of " +
                             step.action + " has type " + *ty + ", expected " +
                             schema->params[k].type,
                         {line_no, col});
    }
    step.index = static_cast<int>(plan.steps.size());
    plan.steps.push_back(std::move(step));

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return plan;
}

std::string render_plan(const Plan& plan) {
  std::string out;
  for (const PlanStep& s : plan.steps) {
    out.push_back('(');
    out += s.action;
    for (const std::string& a : s.args) {
      out.push_back(' ');
      out += a;
    }
    out += ")\n";
  }
  return out;
}

}  // namespace plandiv
