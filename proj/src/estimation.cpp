#include "swarm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swarm {

namespace {

void require_estimable(const ObservationTally& tally, SensorAccuracy acc)
{
    if (tally.total == 0) {
        throw std::invalid_argument("estimation requires at least one observation");
    }
    if (tally.black > tally.total) {
        throw std::invalid_argument("tally has more black readings than observations");
    }
    if (!acc.in_range()) {
        throw std::invalid_argument("sensor accuracies must lie in [0,1]");
    }
    if (acc.discrimination() <= 0.0) {
        throw std::invalid_argument("uninformative sensor: requires b + w > 1, got b=" +
                                    std::to_string(acc.b) + " w=" + std::to_string(acc.w));
    }
}

} // namespace

double reading_probability(double fill_ratio, SensorAccuracy acc)
{
    if (fill_ratio < 0.0 || fill_ratio > 1.0) {
        throw std::invalid_argument("fill ratio must lie in [0,1]");
    }
    if (!acc.in_range()) {
        throw std::invalid_argument("sensor accuracies must lie in [0,1]");
    }
    return acc.b * fill_ratio + (1.0 - acc.w) * (1.0 - fill_ratio);
}

double local_estimate(const ObservationTally& tally, SensorAccuracy acc)
{
    require_estimable(tally, acc);

    const double n = static_cast<double>(tally.black);
    const double t = static_cast<double>(tally.total);
    if (n <= (1.0 - acc.w) * t) {
        return 0.0;
    }
    if (n >= acc.b * t) {
        return 1.0;
    }
    const double f = (n / t + acc.w - 1.0) / acc.discrimination();
    return std::clamp(f, 0.0, 1.0);
}

namespace detail {

double fisher_at_floor(double n, double t, SensorAccuracy acc)
{
    const double q = acc.discrimination() * acc.discrimination();
    const double w = acc.w;
    const double num = q * (t * w * w - 2.0 * (t - n) * w + (t - n));
    const double denom = w * w * (w - 1.0) * (w - 1.0);
    return num / denom;
}

double fisher_interior(double n, double t, SensorAccuracy acc)
{
    const double q = acc.discrimination() * acc.discrimination();
    return q * t * t * t / (n * (t - n));
}

double fisher_at_ceiling(double n, double t, SensorAccuracy acc)
{
    const double q = acc.discrimination() * acc.discrimination();
    const double b = acc.b;
    const double num = q * (t * b * b - 2.0 * n * b + n);
    const double denom = b * b * (b - 1.0) * (b - 1.0);
    return num / denom;
}

} // namespace detail

double local_confidence(const ObservationTally& tally, SensorAccuracy acc, double cap)
{
    require_estimable(tally, acc);
    if (!(cap > 0.0)) {
        throw std::invalid_argument("confidence cap must be positive");
    }

    const double n = static_cast<double>(tally.black);
    const double t = static_cast<double>(tally.total);

    double info;
    if (n <= (1.0 - acc.w) * t) {
        // Saturated at 0; singular when w = 1 (where the branch shrinks to n = 0).
        info = acc.w == 1.0 ? cap : detail::fisher_at_floor(n, t, acc);
    } else if (n >= acc.b * t) {
        info = acc.b == 1.0 ? cap : detail::fisher_at_ceiling(n, t, acc);
    } else {
        info = detail::fisher_interior(n, t, acc);
    }
    if (!std::isfinite(info)) {
        return cap;
    }
    return std::min(info, cap);
}

EstimatePair local_values(const ObservationTally& tally, SensorAccuracy acc, double cap)
{
    return {local_estimate(tally, acc), local_confidence(tally, acc, cap)};
}

EstimatePair fuse_social(std::span<const EstimatePair> neighbor_values)
{
    double weighted_sum = 0.0;
    double confidence_sum = 0.0;
    for (const EstimatePair& p : neighbor_values) {
        if (p.confidence < 0.0) {
            throw std::invalid_argument("neighbor confidence must be nonnegative");
        }
        weighted_sum += p.confidence * p.value;
        confidence_sum += p.confidence;
    }
    if (confidence_sum == 0.0) {
        return {0.0, 0.0};
    }
    return {weighted_sum / confidence_sum, confidence_sum};
}

EstimatePair informed_estimate(const EstimatePair& local, const EstimatePair& social)
{
    const double total = local.confidence + social.confidence;
    if (!(total > 0.0)) {
        throw std::invalid_argument("informed estimate undefined with zero total confidence");
    }
    if (social.confidence == 0.0) {
        return local; // no neighbors: informed equals local exactly
    }
    const double value =
        (local.confidence * local.value + social.confidence * social.value) / total;
    return {value, total};
}

} // namespace swarm
