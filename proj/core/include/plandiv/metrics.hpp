// Pairwise plan-similarity metrics over action-signature sets, post-state
// sets, causal links, partial-order blocks, and subgoal traces, plus
// weighted aggregation. Every metric returns a value in [0,1] where 1
// means identical; dissimilarity is 1 - similarity throughout.
#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "plandiv/ground.hpp"
#include "plandiv/pop.hpp"
#include "plandiv/subgoals.hpp"

namespace plandiv {

enum class MetricId { actions, states, causal, uniqueness, flex, sgo };

inline constexpr std::array<MetricId, 6> kAllMetrics = {
    MetricId::actions, MetricId::states,     MetricId::causal,
    MetricId::uniqueness, MetricId::flex,    MetricId::sgo};

std::string to_string(MetricId id);

/// Accepts the full names plus the short aliases a, s, c, u.
/// Throws std::invalid_argument for anything else.
MetricId metric_from_string(const std::string& name);

/// A similarity value together with how long it took to compute.
struct MetricValue {
  double value = 0.0;
  double compute_ms = 0.0;
};

/// |A ∩ B| / |A ∪ B| over two sorted unique ranges (sets, or sorted
/// deduplicated vectors). Both-empty compares as identical: 1.
template <class Range>
double jaccard(const Range& a, const Range& b) {
  auto ia = std::begin(a);
  auto ea = std::end(a);
  auto ib = std::begin(b);
  auto eb = std::end(b);
  std::size_t common = 0;
  std::size_t total = 0;
  while (ia != ea && ib != eb) {
    ++total;
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  for (; ia != ea; ++ia) ++total;
  for (; ib != eb; ++ib) ++total;
  if (total == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(total);
}

/// Jaccard over the plans' step-signature sets. Computed from the step
/// text alone; validity is the caller's contract here (the task-taking
/// entry points below check it).
MetricValue delta_actions(const Plan& a, const Plan& b);

/// 1 when every signature of a also occurs in b (covers both the
/// equal-sets and strict-subset cases of the defining formula), else 0.
/// Deliberately asymmetric; callers choose the direction they mean.
MetricValue delta_uniqueness(const Plan& a, const Plan& b);

/// Jaccard over the sets of post-action states (initial state excluded,
/// duplicate states collapsed). Requires both plans valid.
MetricValue delta_states(const TaskContext& ctx, const Plan& a, const Plan& b);

/// Jaccard over causal-link sets. Requires both plans valid.
MetricValue delta_causal(const TaskContext& ctx, const Plan& a, const Plan& b);

/// Jaccard over partial-order block sets. Requires both plans valid.
MetricValue delta_flex(const TaskContext& ctx, const Plan& a, const Plan& b);

/// 1 - HDist(trace_a, trace_b) / max(len_a, len_b); 1 when both traces
/// are empty. Requires both plans valid.
MetricValue delta_sgo(const TaskContext& ctx, const Plan& a, const Plan& b);

/// Dispatch by id. Validates both plans for every metric, including the
/// two that could in principle be computed from the step text alone.
MetricValue similarity(MetricId id, const TaskContext& ctx, const Plan& a,
                       const Plan& b);

/// D = 1 - delta.
double dissimilarity(MetricId id, const TaskContext& ctx, const Plan& a,
                     const Plan& b);

/// Weighted arithmetic mean. values and weights must be nonempty and the
/// same size, weights non-negative and not all zero; throws
/// std::invalid_argument otherwise.
double aggregate(const std::vector<double>& values,
                 const std::vector<double>& weights);

/// Which per-plan artifacts a metric set needs; signature sets are
/// always built.
struct AnalysisNeeds {
  bool states = false;
  bool links = false;
  bool blocks = false;
  bool trace = false;

  static AnalysisNeeds for_metrics(const std::vector<MetricId>& ids);
};

/// Per-plan artifacts shared by the pairwise metrics: computed once per
/// plan, combined per pair. Only the requested artifacts are populated.
struct PlanAnalysis {
  std::set<std::string> signatures;
  std::vector<State> states;  // sorted, deduplicated post-states
  std::set<CausalLink> links;
  std::set<std::set<std::string>> blocks;
  SubgoalTrace trace;
};

/// Grounds and walks the plan once, building the requested artifacts.
/// Throws TaskError when a step cannot be grounded, a precondition
/// fails, or the goal does not hold in the final state.
PlanAnalysis analyze_plan(const TaskContext& ctx, const Plan& plan,
                          const AnalysisNeeds& needs);

/// Combines two precomputed analyses. The analyses must have been built
/// with the artifacts this metric needs. Ordered for the uniqueness
/// metric: returns 1 iff a's signatures are contained in b's.
double pair_similarity(MetricId id, const PlanAnalysis& a,
                       const PlanAnalysis& b);

}  // namespace plandiv
