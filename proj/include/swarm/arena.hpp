#pragma once

#include <cstdint>
#include <vector>

#include "swarm/accuracy.hpp"
#include "swarm/estimation.hpp"
#include "swarm/rng.hpp"

namespace swarm {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0; // radians

    friend bool operator==(const Pose&, const Pose&) = default;
};

// Square grid of black/white tiles covering the arena. The cell owning a
// position is the half-open square [k*side, (k+1)*side) on each axis.
struct TileGrid {
    std::uint32_t side_count = 0;
    double tile_side = 0.0;
    std::vector<std::uint8_t> black; // row-major, side_count^2 entries

    std::size_t cell_count() const { return black.size(); }
    std::size_t black_count() const;

    bool black_at(double x, double y) const
    {
        std::uint32_t cx = static_cast<std::uint32_t>(x / tile_side);
        std::uint32_t cy = static_cast<std::uint32_t>(y / tile_side);
        if (cx >= side_count) {
            cx = side_count - 1;
        }
        if (cy >= side_count) {
            cy = side_count - 1;
        }
        return black[static_cast<std::size_t>(cy) * side_count + cx] != 0;
    }
};

// True color of the cell under a pose; sensor noise is applied by the caller.
inline bool sense_tile(const Pose& pose, const TileGrid& grid)
{
    return grid.black_at(pose.x, pose.y);
}

struct ArenaConfig {
    std::uint32_t n_robots = 25;
    double density = 1.0;      // D = N*pi*r^2 / L^2
    double comm_range = 0.7;   // meters
    double speed = 0.14;       // meters/second
    double tick = 0.1;         // seconds per step (one observation per step)
    double tile_side = 0.0;    // meters; 0 derives speed*tick/sqrt(2)
    double turn_probability = 0.1;
    double fill_ratio = 0.55;
    std::uint32_t total_steps = 10000;
    std::uint64_t seed = 0;
    AccuracySpec accuracy;
    double delta = 0.01;
    int bins = 10;
    double alpha_max = kDefaultConfidenceCap;

    double arena_side() const;         // L = sqrt(N*pi*r^2 / D)
    double resolved_tile_side() const; // explicit value, or the diagonal-per-tick default
    void validate() const;             // throws ConfigError
};

// Straight-line motion parameters for one step.
struct MotionParams {
    double step_length = 0.0; // speed * tick
    double turn_probability = 0.1;
    double arena_side = 0.0;
};

// Tile grid with exactly round(f * cells) black cells placed uniformly at
// random, plus uniform initial poses. Both drawn from `rng` (grid first,
// then poses in robot order).
struct ArenaLayout {
    TileGrid grid;
    std::vector<Pose> poses;
};
ArenaLayout build_arena(const ArenaConfig& cfg, Rng& rng);

// Advance one tick: occasional fresh uniform heading, then straight-line
// motion; a step that would leave the arena redraws the heading toward the
// interior first. Consumes a per-robot-deterministic number of draws.
Pose step_motion(const Pose& pose, const MotionParams& motion, Rng& rng);

// neighbors(i) = all j != i with euclidean distance <= range, sorted.
std::vector<std::vector<std::uint32_t>> range_neighbors(std::span<const Pose> poses,
                                                        double range);

} // namespace swarm
