#pragma once

#include <cstdint>
#include <span>

#include "swarm/rng.hpp"

namespace swarm {

// Hard ceiling on local (Fisher) confidences. The information of a saturated
// estimate with a perfect sensor is a 0/0 form, and even regular values grow
// without bound in t; a finite cap keeps the fusion weights well-conditioned.
inline constexpr double kDefaultConfidenceCap = 1.0e12;

// Per-robot probabilities of a correct reading on a black tile (b) and on a
// white tile (w). Any values in [0,1] can be stored; the estimation routines
// reject sensors with b + w <= 1, for which the fill ratio is unidentifiable.
struct SensorAccuracy {
    double b = 1.0;
    double w = 1.0;

    // Slope of the observation probability in the fill ratio.
    double discrimination() const { return b + w - 1.0; }
    bool in_range() const { return b >= 0.0 && b <= 1.0 && w >= 0.0 && w <= 1.0; }
    bool informative() const { return in_range() && discrimination() > 0.0; }
};

// Running observation counts: black readings seen vs. total readings.
struct ObservationTally {
    std::uint64_t black = 0;
    std::uint64_t total = 0;

    void record(bool black_reading)
    {
        total += 1;
        if (black_reading) {
            black += 1;
        }
    }
};

// An estimate of the fill ratio together with its information weight.
// Used for local, social, and informed values alike.
struct EstimatePair {
    double value = 0.0;
    double confidence = 0.0;

    friend bool operator==(const EstimatePair&, const EstimatePair&) = default;
};

// Probability that a single reading comes back black: b*f + (1-w)*(1-f).
double reading_probability(double fill_ratio, SensorAccuracy acc);

// One noisy reading of a tile: true (black) with probability b on a black
// tile and 1-w on a white tile. Consumes exactly one draw.
inline bool sample_reading(bool tile_is_black, SensorAccuracy acc, Rng& rng)
{
    return chance(rng, tile_is_black ? acc.b : 1.0 - acc.w);
}

// Maximum-likelihood fill-ratio estimate from a tally. Piecewise: saturates
// at 0 for n <= (1-w)t, at 1 for n >= bt, and interpolates in between.
// Requires total >= 1 and an informative sensor.
double local_estimate(const ObservationTally& tally, SensorAccuracy acc);

// Fisher information of the local estimate, evaluated on the branch matching
// local_estimate. Singular branches (b = 1 or w = 1 at saturation) and any
// value beyond `cap` report `cap`.
double local_confidence(const ObservationTally& tally, SensorAccuracy acc,
                        double cap = kDefaultConfidenceCap);

// Both of the above in one call.
EstimatePair local_values(const ObservationTally& tally, SensorAccuracy acc,
                          double cap = kDefaultConfidenceCap);

// Confidence-weighted fusion of neighbor values: the social confidence is the
// sum of the neighbor confidences and the social value their weighted mean.
// An empty list (or all-zero confidences) yields the neutral pair (0, 0).
EstimatePair fuse_social(std::span<const EstimatePair> neighbor_values);

// Weighted mean of the local and social values; the result carries the
// combined confidence. Rejects the no-information case (both zero).
EstimatePair informed_estimate(const EstimatePair& local, const EstimatePair& social);

namespace detail {

// Fisher-information branch expressions as continuous functions of a real
// observation count, exposed so the boundary-continuity tests can evaluate
// them at the exact real thresholds n = (1-w)t and n = bt.
double fisher_at_floor(double n, double t, SensorAccuracy acc);
double fisher_interior(double n, double t, SensorAccuracy acc);
double fisher_at_ceiling(double n, double t, SensorAccuracy acc);

} // namespace detail

} // namespace swarm
