#include "plandiv/subgoals.hpp"

#include <algorithm>

namespace plandiv {

std::string SubgoalAlphabet::symbol_for_index(std::size_t goal_index) {
  // A..W, Y, Z — skipping the reserved 'X' — then G26, G27, ... (1-based).
  static constexpr char kLetters[] = "ABCDEFGHIJKLMNOPQRSTUVWYZ";
  constexpr std::size_t kLetterCount = sizeof(kLetters) - 1;
  if (goal_index < kLetterCount) return std::string(1, kLetters[goal_index]);
  return "G" + std::to_string(goal_index + 1);
}

SubgoalAlphabet subgoal_alphabet(const TaskContext& ctx) {
  SubgoalAlphabet alpha;
  alpha.goal_atoms = ctx.goal();
  alpha.symbols.reserve(alpha.goal_atoms.size());
  for (std::size_t i = 0; i < alpha.goal_atoms.size(); ++i)
    alpha.symbols.push_back(SubgoalAlphabet::symbol_for_index(i));
  return alpha;
}

std::string SubgoalTrace::render() const {
  std::string out;
  for (const std::string& t : tokens) out += t;
  return out;
}

SubgoalTrace subgoal_trace(const TaskContext& ctx, const Plan& plan) {
  ValidationReport report = validate(ctx, plan);
  if (!report.valid) {
    std::string msg = "invalid plan: " + report.reason;
    if (report.failing_step)
      msg += " (step " + std::to_string(*report.failing_step) + ")";
    throw TaskError(msg);
  }
  return subgoal_trace(ctx, simulate(ctx, plan));
}

SubgoalTrace subgoal_trace(const TaskContext& ctx, const Trajectory& traj) {
  const std::vector<AtomId>& goal = ctx.goal();
  std::vector<bool> reported(goal.size(), false);
  for (std::size_t gi = 0; gi < goal.size(); ++gi)
    if (traj.initial.contains(goal[gi])) reported[gi] = true;

  SubgoalTrace trace;
  trace.tokens.reserve(traj.post_states.size());
  for (const State& s : traj.post_states) {
    // Smallest-index goal atom that is true here and not yet reported.
    std::size_t pick = goal.size();
    for (std::size_t gi = 0; gi < goal.size(); ++gi) {
      if (!reported[gi] && s.contains(goal[gi])) {
        pick = gi;
        break;
      }
    }
    if (pick == goal.size()) {
      trace.tokens.emplace_back(kNoSubgoal);
    } else {
      reported[pick] = true;
      trace.tokens.push_back(SubgoalAlphabet::symbol_for_index(pick));
    }
  }
  return trace;
}

std::size_t hamming(const SubgoalTrace& a, const SubgoalTrace& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::size_t dist = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& ta = i < a.size() ? a.tokens[i] : kPad;
    const std::string& tb = i < b.size() ? b.tokens[i] : kPad;
    if (ta != tb) ++dist;
  }
  return dist;
}

}  // namespace plandiv
