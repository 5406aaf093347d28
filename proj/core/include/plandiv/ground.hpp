// Grounding of plan steps against a task, STRIPS state progression,
// plan validation, and causal link extraction.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "plandiv/pddl.hpp"

namespace plandiv {

using AtomId = std::uint32_t;

/// Interns canonical ground-atom strings ("pred(a,b)", bare name when
/// zero-ary) to dense ids. Append-only; ids are stable once issued.
class AtomTable {
 public:
  AtomId id(const std::string& canonical);
  AtomId id(const Atom& atom) { return id(atom_signature(atom)); }
  const std::string& name(AtomId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, AtomId> index_;
  std::vector<std::string> names_;
};

struct GroundLiteral {
  AtomId atom;
  bool negated;
};

/// A plan step resolved against its schema. Static equality preconditions
/// are checked during grounding and never stored; add and del are sorted
/// and disjoint.
struct GroundedAction {
  std::string signature;  // "name(arg1,...,argk)" or bare name
  std::vector<GroundLiteral> pre;  // schema order, for stable diagnostics
  std::vector<AtomId> add;
  std::vector<AtomId> del;
};

/// Set of ground atoms under the closed-world assumption, stored sorted.
class State {
 public:
  State() = default;
  static State of(std::vector<AtomId> atoms);  // sorts and dedupes

  bool contains(AtomId a) const;
  const std::vector<AtomId>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  auto operator<=>(const State&) const = default;

 private:
  std::vector<AtomId> atoms_;
  friend State apply(const State&, const GroundedAction&, const AtomTable&);
};

/// initial plus one post-state per plan step, in order.
struct Trajectory {
  State initial;
  std::vector<State> post_states;
  const State& final_state() const {
    return post_states.empty() ? initial : post_states.back();
  }
};

inline constexpr const char* kInitToken = "INIT";
inline constexpr const char* kGoalToken = "GOAL";

/// producer/consumer are grounded-action signatures, or the INIT/GOAL
/// tokens; atom is the canonical ground-atom string. Links from repeated
/// signatures merge, since identity is signature-based.
struct CausalLink {
  std::string producer;
  std::string atom;
  std::string consumer;
  auto operator<=>(const CausalLink&) const = default;
};

struct ValidationReport {
  bool valid = false;
  std::optional<int> failing_step;  // 0-based occurrence index
  std::string reason;               // empty when valid
  std::vector<std::string> missing_goals;
};

/// Shared grounding context for one (domain, problem) pair: owns the atom
/// table, the initial state, and the goal in textual order. Grounding
/// interns new atoms, so a context must not be shared across threads
/// while plans are still being grounded.
class TaskContext {
 public:
  TaskContext(const DomainModel& dom, const ProblemModel& prob);

  const DomainModel& domain() const { return *dom_; }
  const ProblemModel& problem() const { return *prob_; }
  AtomTable& atoms() const { return table_; }
  const State& initial_state() const { return init_; }
  /// Goal atom ids in the order the problem text lists them.
  const std::vector<AtomId>& goal() const { return goal_; }

  /// Resolves one plan step: schema lookup, arity/type checks, static
  /// equality. Throws TaskError when the step cannot be grounded.
  GroundedAction ground_step(const PlanStep& step) const;
  std::vector<GroundedAction> ground(const Plan& plan) const;

 private:
  const DomainModel* dom_;
  const ProblemModel* prob_;
  mutable AtomTable table_;
  State init_;
  std::vector<AtomId> goal_;
};

/// STRIPS progression: (s \ del) ∪ add. Throws TaskError naming the first
/// unsatisfied precondition literal (table renders atom names).
State apply(const State& s, const GroundedAction& a, const AtomTable& table);

/// Folds apply over the plan. Throws TaskError annotated with the failing
/// step index and signature when some step is inapplicable.
Trajectory simulate(const TaskContext& ctx, const Plan& plan);

/// Never throws on invalid plans; reports the failure instead. A plan is
/// valid when every step applies and the goal holds in the final state.
ValidationReport validate(const TaskContext& ctx, const Plan& plan);

/// Causal links of a valid plan: for every positive precondition of every
/// step, the latest earlier adder (INIT when none); for every goal atom,
/// a link from its latest adder (or INIT) to GOAL. Requires a valid plan.
std::set<CausalLink> causal_links(const TaskContext& ctx, const Plan& plan);

// Convenience wrappers that build a one-shot context.
Trajectory simulate(const Plan& plan, const DomainModel& dom,
                    const ProblemModel& prob);
ValidationReport validate(const Plan& plan, const DomainModel& dom,
                          const ProblemModel& prob);
std::set<CausalLink> causal_links(const Plan& plan, const DomainModel& dom,
                                  const ProblemModel& prob);

}  // namespace plandiv
