// Deordering of a total-order plan into a partial order: an explanation
// graph over step occurrences, and a layered block view of it.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plandiv/ground.hpp"

namespace plandiv {

/// Ordering constraints between plan step occurrences. An edge (i, j)
/// with i < j means occurrence i must stay before occurrence j in any
/// reordering that preserves the plan's explanations.
struct PrecedenceGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;   // sorted, each with first < second
  std::vector<std::vector<int>> preds;      // preds[j] = incoming occurrences

  bool has_edge(int i, int j) const;
};

/// Layered view: layer(j) = 0 for sources, else 1 + max over predecessor
/// layers (longest path). Blocks are the SET of signature-sets per layer;
/// two layers with identical signature sets collapse into one block, and
/// repeated signatures within a layer collapse too.
struct PartialOrderPlan {
  std::set<std::set<std::string>> blocks;
  std::vector<int> layer_of;  // by occurrence index
};

/// Edge rule, for occurrences i < j over positive preconditions pre+:
///   add(a_i) ∩ pre+(a_j) ≠ ∅   producer feeds consumer
///   del(a_i) ∩ pre+(a_j) ≠ ∅   earlier deleter must stay before re-use
///   del(a_j) ∩ pre+(a_i) ≠ ∅   later deleter must stay after user
///   add(a_i) ∩ del(a_j) ≠ ∅    or  del(a_i) ∩ add(a_j) ≠ ∅   interference
PrecedenceGraph precedence_graph(const std::vector<GroundedAction>& actions);
PartialOrderPlan extract_pop(const std::vector<GroundedAction>& actions);

/// Plan-level forms; both require a valid plan and throw TaskError otherwise.
PrecedenceGraph precedence_graph(const TaskContext& ctx, const Plan& plan);
PartialOrderPlan extract_pop(const TaskContext& ctx, const Plan& plan);

}  // namespace plandiv
