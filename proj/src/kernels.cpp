#include "swarm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarm/errors.hpp"

namespace swarm {

Engine engine_from_string(const std::string& name)
{
    if (name == "serial") {
        return Engine::serial;
    }
    if (name == "parallel" || name == "openmp") {
        return Engine::openmp;
    }
    throw ConfigError("unknown engine: " + name + " (expected serial|parallel)");
}

namespace {

inline void observe_robot(RobotState& s, Rng& rng, double fill_ratio, std::uint32_t steps,
                          double cap)
{
    for (std::uint32_t k = 0; k < steps; ++k) {
        observe_coin_step(s, fill_ratio, cap, rng);
    }
}

inline void exchange_robot(RobotState& s, std::span<const EstimatePair> locals,
                           std::span<const std::uint32_t> neighbors)
{
    if (!neighbors.empty()) {
        double weighted_sum = 0.0;
        double confidence_sum = 0.0;
        for (std::uint32_t j : neighbors) { // ascending ids: fixed summation order
            weighted_sum += locals[j].confidence * locals[j].value;
            confidence_sum += locals[j].confidence;
        }
        s.social = confidence_sum == 0.0
                       ? EstimatePair{0.0, 0.0}
                       : EstimatePair{weighted_sum / confidence_sum, confidence_sum};
    }
    refresh_informed(s);
}

} // namespace

void observe_block(std::span<RobotState> states, std::span<Rng> streams, double fill_ratio,
                   std::uint32_t steps, double cap, Engine engine)
{
    const std::int64_t n = static_cast<std::int64_t>(states.size());
    if (engine == Engine::serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            observe_robot(states[i], streams[i], fill_ratio, steps, cap);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        observe_robot(states[i], streams[i], fill_ratio, steps, cap);
    }
}

void sense_and_observe(std::span<RobotState> states, std::span<const Pose> poses,
                       const TileGrid& grid, std::span<Rng> streams, double cap,
                       Engine engine)
{
    const std::int64_t n = static_cast<std::int64_t>(states.size());
    if (engine == Engine::serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            observe_tile_step(states[i], sense_tile(poses[i], grid), cap, streams[i]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        observe_tile_step(states[i], sense_tile(poses[i], grid), cap, streams[i]);
    }
}

void exchange_round(std::span<RobotState> states, const NeighborLists& adjacency,
                    ExchangeScratch& scratch, Engine engine)
{
    if (adjacency.size() != states.size()) {
        throw std::invalid_argument("adjacency size does not match robot count");
    }
    // Snapshot the pre-round local values so the exchange is synchronous.
    scratch.locals.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        scratch.locals[i] = states[i].local;
    }

    const std::int64_t n = static_cast<std::int64_t>(states.size());
    if (engine == Engine::serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            exchange_robot(states[i], scratch.locals, adjacency[i]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        exchange_robot(states[i], scratch.locals, adjacency[i]);
    }
}

void refresh_informed_all(std::span<RobotState> states, Engine engine)
{
    const std::int64_t n = static_cast<std::int64_t>(states.size());
    if (engine == Engine::serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            refresh_informed(states[i]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        refresh_informed(states[i]);
    }
}

void move_robots(std::span<Pose> poses, const MotionParams& motion, std::span<Rng> streams,
                 Engine engine)
{
    const std::int64_t n = static_cast<std::int64_t>(poses.size());
    if (engine == Engine::serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            poses[i] = step_motion(poses[i], motion, streams[i]);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        poses[i] = step_motion(poses[i], motion, streams[i]);
    }
}

namespace {

inline bool within_range(const Pose& a, const Pose& b, double range)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= range * range;
}

void range_neighbors_bruteforce(std::span<const Pose> poses, double range,
                                NeighborLists& out)
{
    const std::size_t n = poses.size();
    for (std::size_t i = 0; i < n; ++i) {
        out[i].clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && within_range(poses[i], poses[j], range)) {
                out[i].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }
}

// Uniform grid with cell size = range, so every neighbor of a pose lies in
// its 3x3 cell neighborhood.
void range_neighbors_grid(std::span<const Pose> poses, double range, double arena_side,
                          NeighborLists& out)
{
    const std::size_t n = poses.size();
    const std::int64_t cells =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(arena_side / range));

    auto cell_of = [&](double v) {
        auto c = static_cast<std::int64_t>(v / range);
        return std::clamp<std::int64_t>(c, 0, cells - 1);
    };

    std::vector<std::vector<std::uint32_t>> buckets(
        static_cast<std::size_t>(cells * cells));
    for (std::size_t i = 0; i < n; ++i) {
        buckets[cell_of(poses[i].y) * cells + cell_of(poses[i].x)].push_back(
            static_cast<std::uint32_t>(i));
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        auto& list = out[i];
        list.clear();
        const std::int64_t cx = cell_of(poses[i].x);
        const std::int64_t cy = cell_of(poses[i].y);
        for (std::int64_t gy = std::max<std::int64_t>(0, cy - 1);
             gy <= std::min(cells - 1, cy + 1); ++gy) {
            for (std::int64_t gx = std::max<std::int64_t>(0, cx - 1);
                 gx <= std::min(cells - 1, cx + 1); ++gx) {
                for (std::uint32_t j : buckets[gy * cells + gx]) {
                    if (j != i && within_range(poses[i], poses[j], range)) {
                        list.push_back(j);
                    }
                }
            }
        }
        std::sort(list.begin(), list.end());
    }
}

} // namespace

void compute_range_neighbors(std::span<const Pose> poses, double range, double arena_side,
                             NeighborLists& out, Engine engine)
{
    out.resize(poses.size());
    if (engine == Engine::serial) {
        range_neighbors_bruteforce(poses, range, out);
    } else {
        range_neighbors_grid(poses, range, arena_side, out);
    }
}

} // namespace swarm
