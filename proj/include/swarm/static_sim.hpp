#pragma once

#include <cstdint>
#include <string>

#include "swarm/accuracy.hpp"
#include "swarm/kernels.hpp"
#include "swarm/record.hpp"
#include "swarm/topology.hpp"

namespace swarm {

// One trial over a fixed communication graph. Motion is abstracted away:
// every observation is an f-weighted coin flip through the noisy sensor.
struct StaticTrialConfig {
    std::uint32_t n_robots = 100;
    double fill_ratio = 0.55;
    TopologyDescriptor topology{TopologyKind::scale_free, 2};
    AccuracySpec accuracy;
    std::uint32_t comm_rounds = 1000;          // C
    std::uint32_t observations_per_round = 10; // R
    std::uint64_t seed = 0;
    double delta = 0.01;
    int bins = 10;
    double alpha_max = kDefaultConfidenceCap;
    // Record one row per observation step instead of one per round; between
    // exchanges the informed value is refreshed against the stale social one.
    bool per_step_informed = false;

    std::uint32_t recorded_rounds() const
    {
        return per_step_informed ? comm_rounds * observations_per_round : comm_rounds;
    }
    std::string cell_label() const;
    void validate() const; // throws ConfigError
};

// Synchronous exchange over a static graph: spec surface for one round.
void communication_round(std::span<RobotState> states, const Graph& graph,
                         Engine engine = Engine::serial);

TrialRecord run_static_trial(const StaticTrialConfig& cfg, Engine engine = Engine::openmp);

} // namespace swarm
