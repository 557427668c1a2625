#pragma once

#include <cstdint>
#include <string>

#include "swarm/estimation.hpp"
#include "swarm/seeds.hpp"

namespace swarm {

// Swarm-level sensor accuracy assignment: either one (b, w) shared by every
// robot, or per-robot b_i = w_i drawn once from U(lo, hi).
struct AccuracySpec {
    enum class Mode { homogeneous, heterogeneous };

    Mode mode = Mode::homogeneous;
    double b = 0.75;
    double w = 0.75;
    double lo = 0.525;
    double hi = 0.975;

    void validate() const;
    std::string label() const;

    // Accuracy for one robot; heterogeneous draws come from the robot's own
    // accuracy substream so they are independent of swarm size.
    SensorAccuracy resolve(std::uint64_t trial_seed_value, std::uint32_t robot) const
    {
        if (mode == Mode::homogeneous) {
            return {b, w};
        }
        Rng rng = accuracy_stream(trial_seed_value, robot);
        const double a = uniform_range(rng, lo, hi);
        return {a, a};
    }

    friend bool operator==(const AccuracySpec&, const AccuracySpec&) = default;
};

} // namespace swarm
