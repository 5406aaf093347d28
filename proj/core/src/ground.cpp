#include "plandiv/ground.hpp"

#include <algorithm>

namespace plandiv {

AtomId AtomTable::id(const std::string& canonical) {
  auto it = index_.find(canonical);
  if (it != index_.end()) return it->second;
  AtomId fresh = static_cast<AtomId>(names_.size());
  index_.emplace(canonical, fresh);
  names_.push_back(canonical);
  return fresh;
}

State State::of(std::vector<AtomId> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  State s;
  s.atoms_ = std::move(atoms);
  return s;
}

bool State::contains(AtomId a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

TaskContext::TaskContext(const DomainModel& dom, const ProblemModel& prob)
    : dom_(&dom), prob_(&prob) {
  std::vector<AtomId> init;
  init.reserve(prob.init.size());
  for (const Atom& a : prob.init) init.push_back(table_.id(a));
  init_ = State::of(std::move(init));
  goal_.reserve(prob.goal.size());
  for (const Atom& a : prob.goal) goal_.push_back(table_.id(a));
}

GroundedAction TaskContext::ground_step(const PlanStep& step) const {
  const ActionSchema* schema = dom_->find_schema(step.action);
  if (!schema) throw TaskError("unknown action " + step.action);
  if (schema->params.size() != step.args.size())
    throw TaskError("action " + step.action + " expects " +
                    std::to_string(schema->params.size()) +
                    " arguments, got " + std::to_string(step.args.size()));

  // Bind parameters, checking each object's type against the parameter.
  std::unordered_map<std::string, std::string> binding;
  for (std::size_t k = 0; k < step.args.size(); ++k) {
    const std::string& obj = step.args[k];
    const std::string* ty = nullptr;
    for (const TypedName& o : prob_->objects)
      if (o.name == obj) ty = &o.type;
    if (!ty)
      for (const TypedName& c : dom_->constants)
        if (c.name == obj) ty = &c.type;
    if (!ty) throw TaskError("unknown constant " + obj + " in step " +
                             step_signature(step));
    if (!dom_->types.is_subtype(*ty, schema->params[k].type))
      throw TaskError("type mismatch: argument " + obj + " of " + step.action +
                      " has type " + *ty + ", expected " +
                      schema->params[k].type);
    binding[schema->params[k].name] = obj;
  }
  auto subst = [&](const Atom& a) {
    Atom out;
    out.pred = a.pred;
    out.args.reserve(a.args.size());
    for (const std::string& t : a.args) {
      auto it = binding.find(t);
      out.args.push_back(it == binding.end() ? t : it->second);
    }
    return out;
  };

  GroundedAction ga;
  ga.signature = step_signature(step);
  for (const Literal& lit : schema->precond) {
    Atom a = subst(lit.atom);
    if (a.pred == "=") {
      // Static: resolved here, never stored in states or preconditions.
      bool equal = a.args[0] == a.args[1];
      if (equal == lit.negated)
        throw TaskError("static equality violated in step " + ga.signature +
                        ": " + (lit.negated ? "(not (= " : "(= ") + a.args[0] +
                        " " + a.args[1] + (lit.negated ? "))" : ")"));
      continue;
    }
    ga.pre.push_back({table_.id(a), lit.negated});
  }
  for (const Atom& a : schema->add) ga.add.push_back(table_.id(subst(a)));
  for (const Atom& a : schema->del) ga.del.push_back(table_.id(subst(a)));
  auto norm = [](std::vector<AtomId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  norm(ga.add);
  norm(ga.del);
  // Schema-level add/del disjointness can collapse after substitution
  // (e.g. move x->x): add wins, as in (s \ del) ∪ add.
  std::vector<AtomId> kept;
  for (AtomId d : ga.del)
    if (!std::binary_search(ga.add.begin(), ga.add.end(), d))
      kept.push_back(d);
  ga.del = std::move(kept);
  return ga;
}

std::vector<GroundedAction> TaskContext::ground(const Plan& plan) const {
  std::vector<GroundedAction> out;
  out.reserve(plan.steps.size());
  for (const PlanStep& s : plan.steps) out.push_back(ground_step(s));
  return out;
}

namespace {

/// First unsatisfied precondition literal of `a` in `s`, if any.
const GroundLiteral* first_unsatisfied(const State& s,
                                       const GroundedAction& a) {
  for (const GroundLiteral& lit : a.pre)
    if (s.contains(lit.atom) == lit.negated) return &lit;
  return nullptr;
}

std::string literal_text(const GroundLiteral& lit, const AtomTable& table) {
  return lit.negated ? "(not " + table.name(lit.atom) + ")"
                     : table.name(lit.atom);
}

}  // namespace

State apply(const State& s, const GroundedAction& a, const AtomTable& table) {
  if (const GroundLiteral* lit = first_unsatisfied(s, a))
    throw TaskError("precondition " + literal_text(*lit, table) +
                    " unsatisfied for " + a.signature);
  State out;
  out.atoms_.reserve(s.atoms().size() + a.add.size());
  // (s \ del) ∪ add over sorted ranges.
  std::set_difference(s.atoms().begin(), s.atoms().end(), a.del.begin(),
                      a.del.end(), std::back_inserter(out.atoms_));
  std::vector<AtomId> merged;
  merged.reserve(out.atoms_.size() + a.add.size());
  std::set_union(out.atoms_.begin(), out.atoms_.end(), a.add.begin(),
                 a.add.end(), std::back_inserter(merged));
  out.atoms_ = std::move(merged);
  return out;
}

Trajectory simulate(const TaskContext& ctx, const Plan& plan) {
  Trajectory traj;
  traj.initial = ctx.initial_state();
  traj.post_states.reserve(plan.steps.size());
  const State* cur = &traj.initial;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    GroundedAction ga = ctx.ground_step(plan.steps[i]);
    try {
      traj.post_states.push_back(apply(*cur, ga, ctx.atoms()));
    } catch (const TaskError& e) {
      throw TaskError("step " + std::to_string(i) + ": " + e.what());
    }
    cur = &traj.post_states.back();
  }
  return traj;
}

ValidationReport validate(const TaskContext& ctx, const Plan& plan) {
  ValidationReport report;
  State cur = ctx.initial_state();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    GroundedAction ga;
    try {
      ga = ctx.ground_step(plan.steps[i]);
    } catch (const TaskError& e) {
      report.failing_step = static_cast<int>(i);
      report.reason = e.what();
      return report;
    }
    if (const GroundLiteral* lit = first_unsatisfied(cur, ga)) {
      report.failing_step = static_cast<int>(i);
      report.reason = "precondition " + literal_text(*lit, ctx.atoms()) +
                      " unsatisfied for " + ga.signature;
      return report;
    }
    cur = apply(cur, ga, ctx.atoms());
  }
  for (AtomId g : ctx.goal())
    if (!cur.contains(g))
      report.missing_goals.push_back(ctx.atoms().name(g));
  if (!report.missing_goals.empty()) {
    report.reason = "goal not satisfied in final state";
    return report;
  }
  report.valid = true;
  return report;
}

std::set<CausalLink> causal_links(const TaskContext& ctx, const Plan& plan) {
  std::set<CausalLink> links;
  // last_adder[atom] = signature of the latest step that added it, with
  // INIT standing in for the initial state.
  std::unordered_map<AtomId, std::string> last_adder;
  for (AtomId a : ctx.initial_state().atoms()) last_adder[a] = kInitToken;

  State cur = ctx.initial_state();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    GroundedAction ga = ctx.ground_step(plan.steps[i]);
    if (const GroundLiteral* lit = first_unsatisfied(cur, ga))
      throw TaskError("causal links need a valid plan; step " +
                      std::to_string(i) + ": precondition " +
                      literal_text(*lit, ctx.atoms()) + " unsatisfied");
    for (const GroundLiteral& lit : ga.pre)
      if (!lit.negated)
        links.insert({last_adder.at(lit.atom), ctx.atoms().name(lit.atom),
                      ga.signature});
    cur = apply(cur, ga, ctx.atoms());
    for (AtomId a : ga.add) last_adder[a] = ga.signature;
  }
  for (AtomId g : ctx.goal()) {
    if (!cur.contains(g))
      throw TaskError("causal links need a valid plan; goal atom " +
                      ctx.atoms().name(g) + " unsatisfied");
    links.insert({last_adder.at(g), ctx.atoms().name(g), kGoalToken});
  }
  return links;
}

Trajectory simulate(const Plan& plan, const DomainModel& dom,
                    const ProblemModel& prob) {
  TaskContext ctx(dom, prob);
  return simulate(ctx, plan);
}

ValidationReport validate(const Plan& plan, const DomainModel& dom,
                          const ProblemModel& prob) {
  TaskContext ctx(dom, prob);
  return validate(ctx, plan);
}

std::set<CausalLink> causal_links(const Plan& plan, const DomainModel& dom,
                                  const ProblemModel& prob) {
  TaskContext ctx(dom, prob);
  return causal_links(ctx, plan);
}

}  // namespace plandiv
