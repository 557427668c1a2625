#include "swarm/arena.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "swarm/errors.hpp"

namespace swarm {

std::size_t TileGrid::black_count() const
{
    return static_cast<std::size_t>(std::count(black.begin(), black.end(), std::uint8_t{1}));
}

double ArenaConfig::arena_side() const
{
    return std::sqrt(static_cast<double>(n_robots) * std::numbers::pi * comm_range *
                     comm_range / density);
}

double ArenaConfig::resolved_tile_side() const
{
    if (tile_side > 0.0) {
        return tile_side;
    }
    return speed * tick / std::numbers::sqrt2;
}

void ArenaConfig::validate() const
{
    if (n_robots < 1) {
        throw ConfigError("n_robots must be at least 1");
    }
    if (density <= 0.0) {
        throw ConfigError("density must be positive");
    }
    if (comm_range <= 0.0) {
        throw ConfigError("comm_range must be positive");
    }
    if (speed < 0.0) {
        throw ConfigError("speed must be nonnegative");
    }
    if (tick <= 0.0) {
        throw ConfigError("tick must be positive");
    }
    if (turn_probability < 0.0 || turn_probability > 1.0) {
        throw ConfigError("turn_probability must lie in [0,1]");
    }
    if (fill_ratio < 0.0 || fill_ratio > 1.0) {
        throw ConfigError("fill_ratio must lie in [0,1]");
    }
    if (total_steps < 1) {
        throw ConfigError("total_steps must be at least 1");
    }
    if (resolved_tile_side() <= 0.0) {
        throw ConfigError("tile_side must be positive (set it explicitly when speed*tick is 0)");
    }
    if (arena_side() < resolved_tile_side()) {
        throw ConfigError("arena smaller than one tile; lower the density or tile_side");
    }
    if (delta <= 0.0) {
        throw ConfigError("delta must be positive");
    }
    if (bins < 1) {
        throw ConfigError("bins must be at least 1");
    }
    if (alpha_max <= 0.0) {
        throw ConfigError("alpha_max must be positive");
    }
    accuracy.validate();
}

ArenaLayout build_arena(const ArenaConfig& cfg, Rng& rng)
{
    cfg.validate();
    const double side = cfg.arena_side();
    const double tile = cfg.resolved_tile_side();

    TileGrid grid;
    grid.tile_side = tile;
    grid.side_count = static_cast<std::uint32_t>(std::ceil(side / tile));
    const std::size_t cells =
        static_cast<std::size_t>(grid.side_count) * grid.side_count;
    const auto black_cells =
        static_cast<std::size_t>(std::llround(cfg.fill_ratio * static_cast<double>(cells)));

    grid.black.assign(cells, 0);
    std::fill_n(grid.black.begin(), black_cells, std::uint8_t{1});
    // Fisher-Yates keeps the black count exact.
    for (std::size_t i = cells; i > 1; --i) {
        const std::size_t j = uniform_below(rng, i);
        std::swap(grid.black[i - 1], grid.black[j]);
    }

    std::vector<Pose> poses(cfg.n_robots);
    for (Pose& p : poses) {
        p.x = uniform01(rng) * side;
        p.y = uniform01(rng) * side;
        p.heading = uniform01(rng) * 2.0 * std::numbers::pi;
    }
    return {std::move(grid), std::move(poses)};
}

Pose step_motion(const Pose& pose, const MotionParams& motion, Rng& rng)
{
    Pose next = pose;
    if (chance(rng, motion.turn_probability)) {
        next.heading = uniform01(rng) * 2.0 * std::numbers::pi;
    }

    const double step = motion.step_length;
    const double side = motion.arena_side;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double nx = next.x + step * std::cos(next.heading);
        const double ny = next.y + step * std::sin(next.heading);
        if (nx >= 0.0 && nx <= side && ny >= 0.0 && ny <= side) {
            next.x = nx;
            next.y = ny;
            return next;
        }
        // Predicted boundary crossing: pick a fresh direction into the
        // interior (rejection over the full circle).
        next.heading = uniform01(rng) * 2.0 * std::numbers::pi;
    }
    // Step longer than any inward segment (degenerate configs only): stay put.
    return next;
}

std::vector<std::vector<std::uint32_t>> range_neighbors(std::span<const Pose> poses,
                                                        double range)
{
    std::vector<std::vector<std::uint32_t>> out(poses.size());
    for (std::size_t i = 0; i < poses.size(); ++i) {
        for (std::size_t j = 0; j < poses.size(); ++j) {
            const double dx = poses[i].x - poses[j].x;
            const double dy = poses[i].y - poses[j].y;
            if (i != j && dx * dx + dy * dy <= range * range) {
                out[i].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }
    return out;
}

} // namespace swarm
