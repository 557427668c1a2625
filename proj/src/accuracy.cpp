#include "swarm/accuracy.hpp"

#include "swarm/errors.hpp"
#include "swarm/text.hpp"

namespace swarm {

void AccuracySpec::validate() const
{
    if (mode == Mode::homogeneous) {
        const SensorAccuracy acc{b, w};
        if (!acc.in_range()) {
            throw ConfigError("sensor accuracies must lie in [0,1]");
        }
        if (!acc.informative()) {
            throw ConfigError("uninformative sensor: b + w must exceed 1 (got b=" +
                              format_double(b) + ", w=" + format_double(w) + ")");
        }
    } else {
        if (!(lo > 0.5) || !(lo <= hi) || !(hi <= 1.0)) {
            throw ConfigError("heterogeneous accuracy bounds must satisfy 0.5 < lo <= hi <= 1");
        }
    }
}

// Labels appear as CSV cell keys, so they must stay free of commas.
std::string AccuracySpec::label() const
{
    if (mode == Mode::homogeneous) {
        if (b == w) {
            return "b=w=" + format_double(b);
        }
        return "b=" + format_double(b) + "_w=" + format_double(w);
    }
    return "het=" + format_double(lo) + "-" + format_double(hi);
}

} // namespace swarm
