#pragma once

#include <cstdint>

#include "swarm/rng.hpp"

namespace swarm {

// Stream derivation conventions. Every robot owns private substreams keyed by
// (trial seed, channel, robot id), so neither the swarm size nor the thread
// schedule can perturb another robot's draws. Channel 3 covers trial-level
// structure (graph build, tile shuffle, initial poses).
inline constexpr std::uint64_t kChannelRobot = 1;
inline constexpr std::uint64_t kChannelAccuracy = 2;
inline constexpr std::uint64_t kChannelStructure = 3;

inline Rng robot_stream(std::uint64_t trial_seed, std::uint32_t robot)
{
    return make_stream(mix_seed(trial_seed, kChannelRobot, robot));
}

inline Rng accuracy_stream(std::uint64_t trial_seed, std::uint32_t robot)
{
    return make_stream(mix_seed(trial_seed, kChannelAccuracy, robot));
}

inline Rng structure_stream(std::uint64_t trial_seed)
{
    return make_stream(mix_seed(trial_seed, kChannelStructure, 0));
}

// Seed for one (cell, trial) run of a sweep.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t cell_index,
                                std::uint64_t trial_index)
{
    return mix_seed(mix_seed(base_seed, cell_index), trial_index);
}

} // namespace swarm
