#include "support/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

using namespace plandiv;

namespace support {

std::vector<PlanStep> all_ground_steps(const DomainModel& dom,
                                       const ProblemModel& prob) {
  std::vector<TypedName> pool = dom.constants;
  pool.insert(pool.end(), prob.objects.begin(), prob.objects.end());

  TaskContext ctx(dom, prob);
  std::vector<PlanStep> steps;
  for (const ActionSchema& schema : dom.schemas) {
    std::vector<std::string> args(schema.params.size());
    // Depth-first product over type-compatible objects per parameter.
    auto bind = [&](auto&& self, std::size_t param) -> void {
      if (param == schema.params.size()) {
        PlanStep step{static_cast<int>(steps.size()), schema.name, args};
        try {
          ctx.ground_step(step);
        } catch (const TaskError&) {
          return;  // static equality ruled this binding out
        }
        steps.push_back(std::move(step));
        return;
      }
      for (const TypedName& obj : pool) {
        if (!dom.types.is_subtype(obj.type, schema.params[param].type))
          continue;
        args[param] = obj.name;
        self(self, param + 1);
      }
    };
    bind(bind, 0);
  }
  return steps;
}

Atom atom_from_signature(const std::string& canonical) {
  std::size_t open = canonical.find('(');
  if (open == std::string::npos) return Atom{canonical, {}};
  Atom atom{canonical.substr(0, open), {}};
  std::size_t pos = open + 1;
  std::string current;
  for (; pos < canonical.size(); ++pos) {
    char c = canonical[pos];
    if (c == ',' || c == ')') {
      atom.args.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  return atom;
}

GeneratedCase random_valid_case(const Toy& toy, std::mt19937& rng,
                                std::size_t max_len,
                                std::size_t max_goal_atoms) {
  ProblemModel goalless = toy.prob;
  goalless.goal.clear();
  TaskContext ctx(toy.dom, goalless);

  std::vector<PlanStep> candidates = all_ground_steps(toy.dom, goalless);
  std::vector<GroundedAction> grounded;
  grounded.reserve(candidates.size());
  for (const PlanStep& step : candidates)
    grounded.push_back(ctx.ground_step(step));

  auto applicable = [&](const State& s, const GroundedAction& a) {
    for (const GroundLiteral& lit : a.pre)
      if (s.contains(lit.atom) == lit.negated) return false;
    return true;
  };

  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::size_t target = len_dist(rng);

  GeneratedCase out;
  out.prob = toy.prob;
  State state = ctx.initial_state();
  for (std::size_t i = 0; i < target; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t c = 0; c < grounded.size(); ++c)
      if (applicable(state, grounded[c])) open.push_back(c);
    if (open.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    std::size_t chosen = open[pick(rng)];
    PlanStep step = candidates[chosen];
    step.index = static_cast<int>(out.plan.steps.size());
    out.plan.steps.push_back(std::move(step));
    state = apply(state, grounded[chosen], ctx.atoms());
  }
  if (out.plan.steps.empty())
    throw std::logic_error("random walk produced no applicable step");

  std::vector<AtomId> final_atoms = state.atoms();
  std::shuffle(final_atoms.begin(), final_atoms.end(), rng);
  std::uniform_int_distribution<std::size_t> goal_count(
      1, std::min(max_goal_atoms, final_atoms.size()));
  std::size_t wanted = goal_count(rng);

  out.prob.goal.clear();
  for (std::size_t i = 0; i < wanted; ++i)
    out.prob.goal.push_back(
        atom_from_signature(ctx.atoms().name(final_atoms[i])));
  return out;
}

}  // namespace support
