// PDDL task and plan models plus parsers for the STRIPS fragment this
// library handles: :strips, :typing, :equality, :negative-preconditions.
// Anything outside that fragment is rejected with a structured error.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plandiv {

/// 1-based position in a source text.
struct SourcePos {
  int line = 1;
  int col = 1;
};

/// Syntax or structural error in a domain/problem/plan text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourcePos pos)
      : std::runtime_error(msg), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Semantic error raised after parsing: bad grounding, type mismatch,
/// use of an invalid plan where a valid one is required, and the like.
class TaskError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A name with its declared type ("object" when the text gives none).
struct TypedName {
  std::string name;
  std::string type = "object";
  bool operator==(const TypedName&) const = default;
};

/// Predicate applied to argument terms. In schema bodies the arguments may
/// be variables (leading '?'); in init/goal/plans they are constants.
struct Atom {
  std::string pred;
  std::vector<std::string> args;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

struct Predicate {
  std::string name;
  std::vector<TypedName> params;
  bool operator==(const Predicate&) const = default;
};

/// STRIPS action schema. Preconditions keep their textual order so error
/// messages can report the first unsatisfied literal deterministically.
/// Equality literals appear in precond with predicate "="; add and del are
/// disjoint after normalization (an atom both added and deleted stays an add).
struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> precond;
  std::vector<Atom> add;
  std::vector<Atom> del;
  bool operator==(const ActionSchema&) const = default;
};

/// Type forest rooted at the implicit "object" type.
class TypeHierarchy {
 public:
  TypeHierarchy();
  void declare(const std::string& type, const std::string& parent);
  bool declared(const std::string& type) const;
  /// True when `type` equals `ancestor` or lies below it.
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
  bool operator==(const TypeHierarchy&) const = default;

 private:
  std::map<std::string, std::string> parent_;
};

struct DomainModel {
  std::string name;
  TypeHierarchy types;
  std::vector<TypedName> constants;
  std::vector<Predicate> predicates;
  std::vector<ActionSchema> schemas;

  const Predicate* find_predicate(std::string_view name) const;
  const ActionSchema* find_schema(std::string_view name) const;
  bool operator==(const DomainModel&) const = default;
};

/// Goal atoms keep the order in which the text lists them; that order is
/// what the subgoal alphabet is built from. Duplicate conjuncts collapse
/// to their first occurrence.
struct ProblemModel {
  std::string name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Atom> goal;
  bool operator==(const ProblemModel&) const = default;
};

/// One step of a total-order plan; index is dense, 0-based.
struct PlanStep {
  int index = 0;
  std::string action;
  std::vector<std::string> args;
  bool operator==(const PlanStep&) const = default;
};

struct Plan {
  std::vector<PlanStep> steps;
  std::string source;  // label or file name, informational only
  std::size_t size() const { return steps.size(); }
  bool operator==(const Plan& o) const { return steps == o.steps; }
};

/// Canonical ground identity used by the metrics: "name(arg1,...,argk)",
/// or the bare name when there are no arguments.
std::string step_signature(const PlanStep& step);
std::string atom_signature(const Atom& atom);

DomainModel parse_domain(std::string_view text);
ProblemModel parse_problem(std::string_view text, const DomainModel& dom);

/// Parses an IPC-format plan: one "(name arg ...)" per line, ';' comments
/// ignored. Steps are checked against the domain's schemas (existence,
/// arity, argument typing) and the problem's objects.
Plan parse_plan(std::string_view text, const DomainModel& dom,
                const ProblemModel& prob);

/// Renders a plan back to IPC format; parse_plan(render_plan(p)) == p.
std::string render_plan(const Plan& plan);

}  // namespace plandiv
