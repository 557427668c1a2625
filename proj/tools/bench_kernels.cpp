// Times the serial reference against the OpenMP kernels and checks that both
// produce identical results while at it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "swarm/dynamic_sim.hpp"
#include "swarm/static_sim.hpp"

using namespace swarm;

namespace {

double time_ms(const std::function<void()>& fn)
{
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

void row(const std::string& name, double serial_ms, double openmp_ms, bool match)
{
    std::printf("%-34s %10.1f %10.1f %8.2fx   %s\n", name.c_str(), serial_ms, openmp_ms,
                serial_ms / openmp_ms, match ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv)
{
    std::uint32_t robots = 512;
    if (argc > 1) {
        robots = static_cast<std::uint32_t>(std::strtoul(argv[1], nullptr, 10));
    }
    std::printf("threads: %d, robots: %u\n\n", omp_get_max_threads(), robots);
    std::printf("%-34s %10s %10s %9s\n", "benchmark", "serial ms", "openmp ms", "speedup");

    {
        StaticTrialConfig cfg;
        cfg.n_robots = robots;
        cfg.topology = {TopologyKind::scale_free, 2};
        cfg.accuracy = {AccuracySpec::Mode::homogeneous, 0.75, 0.75};
        cfg.comm_rounds = 300;
        cfg.observations_per_round = 10;
        cfg.seed = 1;
        TrialRecord a;
        TrialRecord b;
        const double serial_ms = time_ms([&] { a = run_static_trial(cfg, Engine::serial); });
        const double openmp_ms = time_ms([&] { b = run_static_trial(cfg, Engine::openmp); });
        row("static trial (scale-free)", serial_ms, openmp_ms, a == b);
    }

    {
        StaticTrialConfig cfg;
        cfg.n_robots = robots;
        cfg.topology = {TopologyKind::fully_connected};
        cfg.accuracy = {AccuracySpec::Mode::homogeneous, 0.75, 0.75};
        cfg.comm_rounds = 100;
        cfg.observations_per_round = 10;
        cfg.seed = 2;
        TrialRecord a;
        TrialRecord b;
        const double serial_ms = time_ms([&] { a = run_static_trial(cfg, Engine::serial); });
        const double openmp_ms = time_ms([&] { b = run_static_trial(cfg, Engine::openmp); });
        row("static trial (fully connected)", serial_ms, openmp_ms, a == b);
    }

    {
        ArenaConfig cfg;
        cfg.n_robots = 200;
        cfg.density = 5.0;
        cfg.accuracy = {AccuracySpec::Mode::homogeneous, 0.75, 0.75};
        cfg.total_steps = 3000;
        cfg.seed = 3;
        TrialRecord a;
        TrialRecord b;
        const double serial_ms =
            time_ms([&] { a = run_dynamic_trial(cfg, Engine::serial); });
        const double openmp_ms =
            time_ms([&] { b = run_dynamic_trial(cfg, Engine::openmp); });
        row("dynamic trial (200 robots)", serial_ms, openmp_ms, a == b);
    }

    {
        // neighbor query alone: brute-force reference vs grid
        Rng rng = make_stream(4);
        const double side = 10.0;
        std::vector<Pose> poses(2000);
        for (Pose& p : poses) {
            p = {uniform01(rng) * side, uniform01(rng) * side, 0.0};
        }
        NeighborLists a;
        NeighborLists b;
        const double serial_ms = time_ms([&] {
            for (int it = 0; it < 50; ++it) {
                compute_range_neighbors(poses, 0.7, side, a, Engine::serial);
            }
        });
        const double openmp_ms = time_ms([&] {
            for (int it = 0; it < 50; ++it) {
                compute_range_neighbors(poses, 0.7, side, b, Engine::openmp);
            }
        });
        row("range neighbors (2000 poses x50)", serial_ms, openmp_ms, a == b);
    }

    return 0;
}
