#include "plandiv/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <unordered_map>

namespace plandiv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::set<std::string> signature_set(const Plan& plan) {
  std::set<std::string> sigs;
  for (const PlanStep& step : plan.steps) sigs.insert(step_signature(step));
  return sigs;
}

double containment(const std::set<std::string>& a,
                   const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end()) ? 1.0 : 0.0;
}

double trace_similarity(const SubgoalTrace& a, const SubgoalTrace& b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(hamming(a, b)) /
                   static_cast<double>(longest);
}

}  // namespace

std::string to_string(MetricId id) {
  switch (id) {
    case MetricId::actions: return "actions";
    case MetricId::states: return "states";
    case MetricId::causal: return "causal";
    case MetricId::uniqueness: return "uniqueness";
    case MetricId::flex: return "flex";
    case MetricId::sgo: return "sgo";
  }
  throw std::logic_error("unhandled metric id");
}

MetricId metric_from_string(const std::string& name) {
  static const std::unordered_map<std::string, MetricId> kNames = {
      {"actions", MetricId::actions},       {"a", MetricId::actions},
      {"states", MetricId::states},         {"s", MetricId::states},
      {"causal", MetricId::causal},         {"c", MetricId::causal},
      {"uniqueness", MetricId::uniqueness}, {"u", MetricId::uniqueness},
      {"flex", MetricId::flex},             {"sgo", MetricId::sgo}};
  auto it = kNames.find(name);
  if (it == kNames.end())
    throw std::invalid_argument("unknown metric '" + name + "'");
  return it->second;
}

MetricValue delta_actions(const Plan& a, const Plan& b) {
  auto t0 = Clock::now();
  double value = jaccard(signature_set(a), signature_set(b));
  return {value, ms_since(t0)};
}

MetricValue delta_uniqueness(const Plan& a, const Plan& b) {
  auto t0 = Clock::now();
  double value = containment(signature_set(a), signature_set(b));
  return {value, ms_since(t0)};
}

MetricValue similarity(MetricId id, const TaskContext& ctx, const Plan& a,
                       const Plan& b) {
  auto t0 = Clock::now();
  AnalysisNeeds needs = AnalysisNeeds::for_metrics({id});
  PlanAnalysis analysis_a = analyze_plan(ctx, a, needs);
  PlanAnalysis analysis_b = analyze_plan(ctx, b, needs);
  return {pair_similarity(id, analysis_a, analysis_b), ms_since(t0)};
}

MetricValue delta_states(const TaskContext& ctx, const Plan& a,
                         const Plan& b) {
  return similarity(MetricId::states, ctx, a, b);
}

MetricValue delta_causal(const TaskContext& ctx, const Plan& a,
                         const Plan& b) {
  return similarity(MetricId::causal, ctx, a, b);
}

MetricValue delta_flex(const TaskContext& ctx, const Plan& a, const Plan& b) {
  return similarity(MetricId::flex, ctx, a, b);
}

MetricValue delta_sgo(const TaskContext& ctx, const Plan& a, const Plan& b) {
  return similarity(MetricId::sgo, ctx, a, b);
}

double dissimilarity(MetricId id, const TaskContext& ctx, const Plan& a,
                     const Plan& b) {
  return 1.0 - similarity(id, ctx, a, b).value;
}

double aggregate(const std::vector<double>& values,
                 const std::vector<double>& weights) {
  if (values.empty())
    throw std::invalid_argument("aggregate needs at least one value");
  if (values.size() != weights.size())
    throw std::invalid_argument("aggregate needs one weight per value");
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 0.0)
      throw std::invalid_argument("aggregate weights must be non-negative");
    weighted += weights[i] * values[i];
    total += weights[i];
  }
  if (total == 0.0)
    throw std::invalid_argument("aggregate weights must not all be zero");
  return weighted / total;
}

AnalysisNeeds AnalysisNeeds::for_metrics(const std::vector<MetricId>& ids) {
  AnalysisNeeds needs;
  for (MetricId id : ids) {
    switch (id) {
      case MetricId::actions:
      case MetricId::uniqueness:
        break;  // signature sets are always built
      case MetricId::states: needs.states = true; break;
      case MetricId::causal: needs.links = true; break;
      case MetricId::flex: needs.blocks = true; break;
      case MetricId::sgo: needs.trace = true; break;
    }
  }
  return needs;
}

PlanAnalysis analyze_plan(const TaskContext& ctx, const Plan& plan,
                          const AnalysisNeeds& needs) {
  std::vector<GroundedAction> actions = ctx.ground(plan);
  const AtomTable& table = ctx.atoms();
  const bool keep_states = needs.states || needs.trace;

  PlanAnalysis out;
  std::unordered_map<AtomId, std::string> last_adder;
  if (needs.links)
    for (AtomId atom : ctx.initial_state().atoms())
      last_adder.emplace(atom, kInitToken);

  Trajectory traj;
  traj.initial = ctx.initial_state();
  State current = traj.initial;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const GroundedAction& act = actions[i];
    out.signatures.insert(act.signature);
    if (needs.links) {
      for (const GroundLiteral& lit : act.pre) {
        if (lit.negated) continue;
        auto it = last_adder.find(lit.atom);
        out.links.insert({it == last_adder.end() ? kInitToken : it->second,
                          table.name(lit.atom), act.signature});
      }
    }
    try {
      current = apply(current, act, ctx.atoms());
    } catch (const TaskError& err) {
      throw TaskError(std::string(err.what()) + " (step " + std::to_string(i) +
                      ")");
    }
    if (needs.links)
      for (AtomId atom : act.add) last_adder[atom] = act.signature;
    if (keep_states) traj.post_states.push_back(current);
  }

  std::string missing;
  for (AtomId goal_atom : ctx.goal()) {
    if (current.contains(goal_atom)) continue;
    if (!missing.empty()) missing += ", ";
    missing += table.name(goal_atom);
  }
  if (!missing.empty())
    throw TaskError("goal not satisfied in final state: missing " + missing);

  if (needs.links) {
    for (AtomId goal_atom : ctx.goal()) {
      auto it = last_adder.find(goal_atom);
      out.links.insert({it == last_adder.end() ? kInitToken : it->second,
                        table.name(goal_atom), kGoalToken});
    }
  }
  if (needs.states) {
    out.states = traj.post_states;
    std::sort(out.states.begin(), out.states.end());
    out.states.erase(std::unique(out.states.begin(), out.states.end()),
                     out.states.end());
  }
  if (needs.trace) out.trace = subgoal_trace(ctx, traj);
  if (needs.blocks) out.blocks = extract_pop(actions).blocks;
  return out;
}

double pair_similarity(MetricId id, const PlanAnalysis& a,
                       const PlanAnalysis& b) {
  switch (id) {
    case MetricId::actions: return jaccard(a.signatures, b.signatures);
    case MetricId::states: return jaccard(a.states, b.states);
    case MetricId::causal: return jaccard(a.links, b.links);
    case MetricId::uniqueness: return containment(a.signatures, b.signatures);
    case MetricId::flex: return jaccard(a.blocks, b.blocks);
    case MetricId::sgo: return trace_similarity(a.trace, b.trace);
  }
  throw std::logic_error("unhandled metric id");
}

}  // namespace plandiv
