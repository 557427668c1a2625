#pragma once

#include "swarm/estimation.hpp"
#include "swarm/rng.hpp"

namespace swarm {

// Everything a robot carries between steps: its sensor, the observation
// tally, and the three estimate/confidence pairs. Social values persist
// across rounds in which the robot has no neighbors.
struct RobotState {
    SensorAccuracy accuracy;
    ObservationTally tally;
    EstimatePair local{0.5, 0.0};
    EstimatePair social{0.0, 0.0};
    EstimatePair informed{0.5, 0.0};

    friend bool operator==(const RobotState&, const RobotState&) = default;
};

// One observation of a known tile color: noisy reading, tally update, local
// re-estimation. Consumes exactly one draw.
inline void observe_tile_step(RobotState& s, bool tile_is_black, double cap, Rng& rng)
{
    s.tally.record(sample_reading(tile_is_black, s.accuracy, rng));
    s.local = local_values(s.tally, s.accuracy, cap);
}

// One abstracted observation: the tile itself is an f-weighted coin flip.
// Consumes exactly two draws (tile, then sensor).
inline void observe_coin_step(RobotState& s, double fill_ratio, double cap, Rng& rng)
{
    observe_tile_step(s, chance(rng, fill_ratio), cap, rng);
}

// Re-fuse the informed value from the current local and (possibly stale)
// social values. Valid once at least one observation has been made.
inline void refresh_informed(RobotState& s)
{
    s.informed = informed_estimate(s.local, s.social);
}

} // namespace swarm
