#pragma once

#include <iosfwd>
#include <string>

#include "swarm/arena.hpp"
#include "swarm/kernels.hpp"
#include "swarm/record.hpp"

namespace swarm {

std::string dynamic_cell_label(const ArenaConfig& cfg);

// One trial of diffusing robots: every step each robot moves, senses the
// tile beneath it, re-estimates, and exchanges with everyone within
// comm_range (communication every step). Passing `trajectory_out` dumps
// "step robot x y informed" lines for offline plotting.
TrialRecord run_dynamic_trial(const ArenaConfig& cfg, Engine engine = Engine::openmp,
                              std::ostream* trajectory_out = nullptr);

} // namespace swarm
