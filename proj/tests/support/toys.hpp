// Small hand-written STRIPS tasks used across the test suites, plus a
// helper that builds plans through the real plan parser.
#pragma once

#include <string>

#include "plandiv/pddl.hpp"

namespace support {

struct Toy {
  plandiv::DomainModel dom;
  plandiv::ProblemModel prob;
};

/// prep/flip/check over n independent switches; every precondition is a
/// positive fluent, so every linearization of an extracted partial order
/// stays executable.
Toy switchboard(int n_switches = 3);

/// Typed trucks/boxes/locations; move carries (not (= ?from ?to)), so
/// grounding must resolve static equality.
Toy delivery();

/// fill/boil/set-cup/brew/serve; boil and brew consume what they need,
/// forcing re-achievement chains.
Toy kitchen();

/// Two goal beacons lit by independent one-shot actions, padded by a
/// four-step chain: swapping the two lighting steps keeps the action set
/// identical but moves the subgoal positions.
Toy beacons();

/// Three independent marker bits p/q/r, goal all three.
Toy markers();

/// markers variant: p already true initially, goal (p, q).
Toy markers_goal_in_init();

/// arm consumes p to achieve the goal g, extend consumes g, charge
/// re-achieves g; distinct plans share only the (INIT, p, arm) link.
Toy wiring();

/// pulse sets both goals at once, dim knocks the second one out, relight
/// restores it — exercises subgoal destruction and re-achievement.
Toy blinker();

/// Runs the text through the real plan parser against the toy's models.
plandiv::Plan plan_from(const std::string& text, const Toy& toy);

}  // namespace support
