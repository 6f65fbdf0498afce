#pragma once

#include "sarsa_arena/world.hpp"

namespace sarsa_arena {

/// One tick of a scripted opponent: target tracking, combat movement per its
/// skill profile, and a fire order whenever its weapon is ready.
Control scripted_control(World& world, AgentId self);

/// Movement and facing of the learner for one tick. The fire order set by
/// the learner at its last decision is left untouched.
void learner_movement(World& world, AgentId self);

}  // namespace sarsa_arena
