#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarm/arena.hpp"
#include "swarm/robot.hpp"

namespace swarm {

// Per-robot inner loops exist in two variants: a plain serial loop that
// serves as the reference, and an OpenMP loop over robots. Per-robot
// substreams and fixed ascending neighbor order make the two bit-identical;
// the parity tests and the benchmark tool both rely on that.
enum class Engine { serial, openmp };

Engine engine_from_string(const std::string& name);

using NeighborLists = std::vector<std::vector<std::uint32_t>>;

// `steps` abstracted coin-flip observations per robot.
void observe_block(std::span<RobotState> states, std::span<Rng> streams, double fill_ratio,
                   std::uint32_t steps, double cap, Engine engine);

// One grounded observation per robot from the tile under its pose.
void sense_and_observe(std::span<RobotState> states, std::span<const Pose> poses,
                       const TileGrid& grid, std::span<Rng> streams, double cap,
                       Engine engine);

// Synchronous exchange: every robot reads the pre-round (value, confidence)
// local pairs of its neighbors, fuses them into a social pair, and re-fuses
// its informed value. Robots with no neighbors keep their social pair but
// still refresh the informed value.
struct ExchangeScratch {
    std::vector<EstimatePair> locals;
};
void exchange_round(std::span<RobotState> states, const NeighborLists& adjacency,
                    ExchangeScratch& scratch, Engine engine);

// Informed re-fusion only (used between exchanges in per-step recording).
void refresh_informed_all(std::span<RobotState> states, Engine engine);

// One motion tick for every robot.
void move_robots(std::span<Pose> poses, const MotionParams& motion, std::span<Rng> streams,
                 Engine engine);

// Range neighbor query. The serial reference is the brute-force pair scan;
// the OpenMP variant bins poses into a uniform grid of cell size `range`
// and scans the 3x3 neighborhood. Both produce identical sorted lists.
void compute_range_neighbors(std::span<const Pose> poses, double range, double arena_side,
                             NeighborLists& out, Engine engine);

} // namespace swarm
