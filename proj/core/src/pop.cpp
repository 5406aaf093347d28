#include "plandiv/pop.hpp"

#include <algorithm>

namespace plandiv {

namespace {

bool sorted_intersects(const std::vector<AtomId>& a,
                       const std::vector<AtomId>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

void require_valid(const TaskContext& ctx, const Plan& plan) {
  ValidationReport report = validate(ctx, plan);
  if (!report.valid) {
    std::string msg = "invalid plan: " + report.reason;
    if (report.failing_step)
      msg += " (step " + std::to_string(*report.failing_step) + ")";
    throw TaskError(msg);
  }
}

}  // namespace

bool PrecedenceGraph::has_edge(int i, int j) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

PrecedenceGraph precedence_graph(const std::vector<GroundedAction>& actions) {
  const int n = static_cast<int>(actions.size());
  PrecedenceGraph g;
  g.node_count = n;
  g.preds.resize(n);

  // Positive preconditions, sorted, per occurrence.
  std::vector<std::vector<AtomId>> pre_pos(n);
  for (int i = 0; i < n; ++i) {
    for (const GroundLiteral& lit : actions[i].pre)
      if (!lit.negated) pre_pos[i].push_back(lit.atom);
    std::sort(pre_pos[i].begin(), pre_pos[i].end());
    pre_pos[i].erase(std::unique(pre_pos[i].begin(), pre_pos[i].end()),
                     pre_pos[i].end());
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const GroundedAction& ai = actions[i];
      const GroundedAction& aj = actions[j];
      bool ordered = sorted_intersects(ai.add, pre_pos[j]) ||
                     sorted_intersects(ai.del, pre_pos[j]) ||
                     sorted_intersects(aj.del, pre_pos[i]) ||
                     sorted_intersects(ai.add, aj.del) ||
                     sorted_intersects(ai.del, aj.add);
      if (ordered) {
        g.edges.emplace_back(i, j);
        g.preds[j].push_back(i);
      }
    }
  }
  return g;  // edges already sorted: generated in lexicographic order
}

PartialOrderPlan extract_pop(const std::vector<GroundedAction>& actions) {
  PrecedenceGraph g = precedence_graph(actions);
  PartialOrderPlan pop;
  pop.layer_of.resize(g.node_count, 0);
  // Occurrences are processed in plan order and every edge points forward,
  // so predecessors are already layered when their successor is reached.
  int max_layer = -1;
  for (int j = 0; j < g.node_count; ++j) {
    int layer = 0;
    for (int i : g.preds[j]) layer = std::max(layer, pop.layer_of[i] + 1);
    pop.layer_of[j] = layer;
    max_layer = std::max(max_layer, layer);
  }
  std::vector<std::set<std::string>> by_layer(max_layer + 1);
  for (int j = 0; j < g.node_count; ++j)
    by_layer[pop.layer_of[j]].insert(actions[j].signature);
  for (std::set<std::string>& block : by_layer)
    pop.blocks.insert(std::move(block));
  return pop;
}

PrecedenceGraph precedence_graph(const TaskContext& ctx, const Plan& plan) {
  require_valid(ctx, plan);
  return precedence_graph(ctx.ground(plan));
}

PartialOrderPlan extract_pop(const TaskContext& ctx, const Plan& plan) {
  require_valid(ctx, plan);
  return extract_pop(ctx.ground(plan));
}

}  // namespace plandiv
