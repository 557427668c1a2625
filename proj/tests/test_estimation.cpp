#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "swarm/estimation.hpp"

using namespace swarm;

TEST_CASE("reading probability")
{
    CHECK(reading_probability(0.55, {1.0, 1.0}) == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(reading_probability(0.55, {0.75, 0.75}) == doctest::Approx(0.525).epsilon(1e-12));
    CHECK(reading_probability(0.0, {0.9, 0.8}) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(reading_probability(1.5, {0.9, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(reading_probability(0.5, {1.2, 0.9}), std::invalid_argument);
}

TEST_CASE("reading probability matches two-stage monte carlo")
{
    const SensorAccuracy acc{0.75, 0.75};
    const double f = 0.55;
    Rng rng = make_stream(99);
    const int samples = 100000;
    int black = 0;
    for (int i = 0; i < samples; ++i) {
        const bool tile = chance(rng, f);
        if (sample_reading(tile, acc, rng)) {
            black += 1;
        }
    }
    const double rate = static_cast<double>(black) / samples;
    CHECK(std::abs(rate - reading_probability(f, acc)) < 0.01);
}

TEST_CASE("sample_reading degenerate and empirical rates")
{
    Rng rng = make_stream(7);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_reading(true, {1.0, 0.6}, rng));
        CHECK_FALSE(sample_reading(false, {0.6, 1.0}, rng));
    }
    int hits = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        hits += sample_reading(true, {0.75, 0.8}, rng) ? 1 : 0;
    }
    CHECK(std::abs(hits / static_cast<double>(samples) - 0.75) < 0.01);
}

TEST_CASE("local estimate worked values")
{
    CHECK(local_estimate({5, 10}, {1.0, 1.0}) == doctest::Approx(0.5));
    CHECK(local_estimate({62, 100}, {0.75, 0.75}) == doctest::Approx(0.74));
    CHECK(local_estimate({1, 10}, {0.9, 0.8}) == 0.0);  // n=1 <= (1-w)t=2
    CHECK(local_estimate({9, 10}, {0.8, 0.9}) == 1.0);  // n=9 >= bt=8
}

TEST_CASE("local estimate rejects undefined configurations")
{
    CHECK_THROWS_AS(local_estimate({0, 0}, {0.9, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(local_estimate({1, 10}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(local_estimate({1, 10}, {0.3, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(local_confidence({0, 0}, {0.9, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(local_confidence({1, 10}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("local estimate matches grid-search argmax of the log-likelihood")
{
    Rng rng = make_stream(2024);
    for (int it = 0; it < 200; ++it) {
        const double b = uniform_range(rng, 0.525, 0.995);
        const double w = uniform_range(rng, 0.525, 0.995);
        if (b + w <= 1.05) {
            continue;
        }
        const std::uint64_t t = 1 + uniform_below(rng, 200);
        const std::uint64_t n = uniform_below(rng, t + 1);
        const double mle = local_estimate({n, t}, {b, w});
        const double grid = oracles::grid_search_mle(b, w, n, t);
        CHECK(std::abs(mle - grid) < 1e-3);
    }
}

TEST_CASE("local estimate monotone in black count")
{
    Rng rng = make_stream(5);
    for (int it = 0; it < 50; ++it) {
        const double b = uniform_range(rng, 0.55, 1.0);
        const double w = uniform_range(rng, 0.55, 1.0);
        const std::uint64_t t = 1 + uniform_below(rng, 60);
        double prev = -1.0;
        for (std::uint64_t n = 0; n <= t; ++n) {
            const double est = local_estimate({n, t}, {b, w});
            CHECK(est >= prev);
            CHECK(est >= 0.0);
            CHECK(est <= 1.0);
            prev = est;
        }
    }
}

TEST_CASE("local confidence worked values")
{
    // perfect sensor, interior: q t^3 / (n (t-n))
    CHECK(local_confidence({5, 10}, {1.0, 1.0}) == doctest::Approx(40.0));
    // n = bt lands on the saturated-high branch and equals the interior limit
    CHECK(local_confidence({75, 100}, {0.75, 0.75}) == doctest::Approx(400.0 / 3.0));
    // saturated-low branch
    CHECK(local_confidence({0, 10}, {0.9, 0.8}) == doctest::Approx(7.65625));
}

TEST_CASE("local confidence matches the numerical information oracle")
{
    Rng rng = make_stream(31);
    int checked = 0;
    while (checked < 100) {
        const double b = uniform_range(rng, 0.55, 0.99);
        const double w = uniform_range(rng, 0.55, 0.99);
        if (b + w <= 1.05) {
            continue;
        }
        const std::uint64_t t = 5 + uniform_below(rng, 195);
        const std::uint64_t n = uniform_below(rng, t + 1);
        const double alpha = local_confidence({n, t}, {b, w});
        const double f_hat = local_estimate({n, t}, {b, w});
        const double numeric = oracles::numeric_information(f_hat, b, w, n, t);
        CHECK(alpha == doctest::Approx(numeric).epsilon(1e-3));
        checked += 1;
    }
}

TEST_CASE("fisher branches agree at the exact real boundaries")
{
    Rng rng = make_stream(77);
    for (int it = 0; it < 100; ++it) {
        const SensorAccuracy acc{uniform_range(rng, 0.51, 0.99),
                                 uniform_range(rng, 0.51, 0.99)};
        const double t = 1.0 + uniform_below(rng, 500);
        const double n_low = (1.0 - acc.w) * t;
        const double n_high = acc.b * t;
        const double low_a = detail::fisher_at_floor(n_low, t, acc);
        const double low_b = detail::fisher_interior(n_low, t, acc);
        CHECK(low_a == doctest::Approx(low_b).epsilon(1e-6));
        const double high_a = detail::fisher_at_ceiling(n_high, t, acc);
        const double high_b = detail::fisher_interior(n_high, t, acc);
        CHECK(high_a == doctest::Approx(high_b).epsilon(1e-6));
        // both reduce to qt/(w(1-w)) and qt/(b(1-b))
        const double q = acc.discrimination() * acc.discrimination();
        CHECK(low_a == doctest::Approx(q * t / (acc.w * (1.0 - acc.w))).epsilon(1e-9));
        CHECK(high_a == doctest::Approx(q * t / (acc.b * (1.0 - acc.b))).epsilon(1e-9));
    }
}

TEST_CASE("confidence cap handles singular branches and clamps")
{
    // w = 1 collapses the low branch to n = 0 with a 0/0 information value
    CHECK(local_confidence({0, 10}, {0.6, 1.0}) == kDefaultConfidenceCap);
    CHECK(local_confidence({10, 10}, {1.0, 0.6}) == kDefaultConfidenceCap);
    CHECK(local_confidence({0, 10}, {1.0, 1.0}) == kDefaultConfidenceCap);
    CHECK(local_confidence({10, 10}, {1.0, 1.0}) == kDefaultConfidenceCap);
    // custom cap clamps regular values too
    CHECK(local_confidence({5, 10}, {1.0, 1.0}, 10.0) == 10.0);
}

TEST_CASE("confidences stay positive, finite, capped")
{
    Rng rng = make_stream(8);
    for (int it = 0; it < 500; ++it) {
        const double b = uniform_range(rng, 0.51, 1.0);
        const double w = uniform_range(rng, 0.51, 1.0);
        const std::uint64_t t = 1 + uniform_below(rng, 1000);
        const std::uint64_t n = uniform_below(rng, t + 1);
        const double alpha = local_confidence({n, t}, {b, w});
        CHECK(alpha > 0.0);
        CHECK(std::isfinite(alpha));
        CHECK(alpha <= kDefaultConfidenceCap);
    }
}

TEST_CASE("estimator consistency at the interior branch")
{
    // E[n/t] plugged into the interior branch returns f exactly
    const SensorAccuracy acc{0.75, 0.75};
    const double f = 0.55;
    const double p = reading_probability(f, acc);
    const double recovered = (p + acc.w - 1.0) / acc.discrimination();
    CHECK(recovered == doctest::Approx(f).epsilon(1e-12));

    // statistically: mean estimate over seeds at t = 1e4
    const std::uint64_t t = 10000;
    const int seeds = 100;
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng = make_stream(1000 + s);
        std::uint64_t n = 0;
        for (std::uint64_t k = 0; k < t; ++k) {
            n += chance(rng, p) ? 1 : 0;
        }
        mean += local_estimate({n, t}, acc);
    }
    mean /= seeds;
    CHECK(std::abs(mean - f) < 0.01);
}

TEST_CASE("fuse_social worked values and neutral element")
{
    CHECK(fuse_social({}) == EstimatePair{0.0, 0.0});
    const std::vector<EstimatePair> pair{{0.5, 10.0}, {0.8, 50.0}};
    const EstimatePair fused = fuse_social(pair);
    CHECK(fused.value == doctest::Approx(0.75));
    CHECK(fused.confidence == doctest::Approx(60.0));
    const std::vector<EstimatePair> single{{0.6, 3.7}};
    CHECK(fuse_social(single).value == doctest::Approx(0.6));
    CHECK(fuse_social(single).confidence == doctest::Approx(3.7));
    const std::vector<EstimatePair> zeros{{0.4, 0.0}, {0.9, 0.0}};
    CHECK(fuse_social(zeros) == EstimatePair{0.0, 0.0});
    const std::vector<EstimatePair> negative{{0.4, -1.0}};
    CHECK_THROWS_AS(fuse_social(negative), std::invalid_argument);
}

TEST_CASE("informed estimate worked values")
{
    const EstimatePair local{0.37, 12.5};
    CHECK(informed_estimate(local, {0.0, 0.0}) == local);
    const EstimatePair mid = informed_estimate({0.4, 3.0}, {0.6, 3.0});
    CHECK(mid.value == doctest::Approx(0.5));
    CHECK(mid.confidence == doctest::Approx(6.0));
    const std::vector<EstimatePair> neighbors{{0.5, 10.0}, {0.8, 50.0}};
    const EstimatePair full = informed_estimate({0.74, 40.0}, fuse_social(neighbors));
    CHECK(full.value == doctest::Approx(0.746));
    CHECK(full.confidence == doctest::Approx(100.0));
    CHECK_THROWS_AS(informed_estimate({0.5, 0.0}, {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("fusion identities")
{
    Rng rng = make_stream(404);
    for (int it = 0; it < 200; ++it) {
        const std::size_t count = uniform_below(rng, 8);
        std::vector<EstimatePair> neighbors;
        for (std::size_t i = 0; i < count; ++i) {
            neighbors.push_back({uniform01(rng), uniform_range(rng, 0.01, 100.0)});
        }
        const EstimatePair local{uniform01(rng), uniform_range(rng, 0.01, 100.0)};

        // informed(local, fuse(S)) == direct weighted mean over {local} u S
        const EstimatePair via_social = informed_estimate(local, fuse_social(neighbors));
        double num = local.confidence * local.value;
        double den = local.confidence;
        for (const EstimatePair& p : neighbors) {
            num += p.confidence * p.value;
            den += p.confidence;
        }
        CHECK(via_social.value == doctest::Approx(num / den).epsilon(1e-12));
        CHECK(via_social.confidence == doctest::Approx(den).epsilon(1e-12));

        // permutation invariance (confidence exactly, value to rounding)
        std::vector<EstimatePair> shuffled = neighbors;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[uniform_below(rng, i)]);
        }
        const EstimatePair a = fuse_social(neighbors);
        const EstimatePair b = fuse_social(shuffled);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
        CHECK(a.confidence == doctest::Approx(b.confidence).epsilon(1e-12));

        // confidence is additive across a split A u B
        const std::size_t cut = count == 0 ? 0 : uniform_below(rng, count + 1);
        const std::vector<EstimatePair> head(neighbors.begin(), neighbors.begin() + cut);
        const std::vector<EstimatePair> tail(neighbors.begin() + cut, neighbors.end());
        CHECK(fuse_social(neighbors).confidence ==
              doctest::Approx(fuse_social(head).confidence + fuse_social(tail).confidence)
                  .epsilon(1e-12));
    }
}
