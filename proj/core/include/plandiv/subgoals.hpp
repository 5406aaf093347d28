// Subgoal achievement traces: which goal atom a plan locks in at each
// step, encoded over a per-task alphabet derived from the goal order.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plandiv/ground.hpp"

namespace plandiv {

/// Symbols for a task's goal atoms, assigned by textual goal order.
/// Single letters run A..W then Y, Z — 'X' (no subgoal) and '#' (pad) are
/// reserved — and later goal atoms get indexed tokens G26, G27, ...
/// counted 1-based from the goal list.
struct SubgoalAlphabet {
  std::vector<AtomId> goal_atoms;     // task goal order
  std::vector<std::string> symbols;   // parallel to goal_atoms

  static std::string symbol_for_index(std::size_t goal_index);
};

inline constexpr const char* kNoSubgoal = "X";
inline constexpr const char* kPad = "#";

SubgoalAlphabet subgoal_alphabet(const TaskContext& ctx);

/// One token per plan step. Tokens are trace units, not characters: a
/// rendered trace concatenates them, which is lossless only while every
/// symbol is a single letter.
struct SubgoalTrace {
  std::vector<std::string> tokens;
  std::size_t size() const { return tokens.size(); }
  std::string render() const;
};

/// Walks the plan once. A goal atom is reported the first time it is
/// found true after a step; atoms already true in the initial state are
/// treated as reported before the walk. When several unreported goal
/// atoms turn true after one step, only the one with the smallest goal
/// index is reported there — the rest surface on later steps while they
/// remain true. Steps reporting nothing emit "X". Requires a valid plan.
SubgoalTrace subgoal_trace(const TaskContext& ctx, const Plan& plan);

/// Same walk over an already-simulated trajectory of a valid plan; no
/// validation happens here.
SubgoalTrace subgoal_trace(const TaskContext& ctx, const Trajectory& traj);

/// Token-wise Hamming distance; the shorter trace is padded with "#",
/// so padded positions always count as differing.
std::size_t hamming(const SubgoalTrace& a, const SubgoalTrace& b);

}  // namespace plandiv
