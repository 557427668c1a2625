#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "swarm/static_sim.hpp"

using namespace swarm;

namespace {

StaticTrialConfig small_config()
{
    StaticTrialConfig cfg;
    cfg.n_robots = 12;
    cfg.fill_ratio = 0.55;
    cfg.topology = {TopologyKind::scale_free, 2};
    cfg.accuracy = {AccuracySpec::Mode::homogeneous, 0.75, 0.75};
    cfg.comm_rounds = 25;
    cfg.observations_per_round = 4;
    cfg.seed = 7;
    return cfg;
}

RobotState with_local(double value, double confidence)
{
    RobotState s;
    s.tally = {1, 1};
    s.local = {value, confidence};
    return s;
}

} // namespace

TEST_CASE("single-round perfect-sensor trial saturates")
{
    StaticTrialConfig cfg;
    cfg.n_robots = 2;
    cfg.fill_ratio = 1.0;
    cfg.topology = {TopologyKind::fully_connected};
    cfg.accuracy = {AccuracySpec::Mode::homogeneous, 1.0, 1.0};
    cfg.comm_rounds = 1;
    cfg.observations_per_round = 1;
    const TrialRecord record = run_static_trial(cfg);
    CHECK(record.rounds == 1);
    CHECK(record.series[0][0].x == doctest::Approx(1.0));
    CHECK(record.series[1][0].x == doctest::Approx(1.0));
    CHECK(record.series[0][0].x_hat == doctest::Approx(1.0));
}

TEST_CASE("observation steps drive the tally and local estimate")
{
    Rng rng = make_stream(3);
    RobotState all_black;
    all_black.accuracy = {1.0, 1.0};
    for (int i = 0; i < 10; ++i) {
        observe_coin_step(all_black, 1.0, kDefaultConfidenceCap, rng);
    }
    CHECK(all_black.tally.black == 10);
    CHECK(all_black.tally.total == 10);
    CHECK(all_black.local.value == 1.0);
    CHECK(all_black.local.confidence == kDefaultConfidenceCap);

    RobotState all_white;
    all_white.accuracy = {0.9, 1.0};
    for (int i = 0; i < 10; ++i) {
        observe_coin_step(all_white, 0.0, kDefaultConfidenceCap, rng);
    }
    CHECK(all_white.tally.black == 0);
    CHECK(all_white.tally.total == 10);
    CHECK(all_white.local.value == 0.0);
}

TEST_CASE("mean local estimate is consistent at long horizons")
{
    StaticTrialConfig cfg = small_config();
    cfg.n_robots = 100;
    cfg.comm_rounds = 1;
    cfg.observations_per_round = 10000;
    cfg.topology = {TopologyKind::ring};
    const TrialRecord record = run_static_trial(cfg);
    double mean = 0.0;
    for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
        mean += record.series[i][0].x_hat;
    }
    mean /= cfg.n_robots;
    CHECK(std::abs(mean - 0.55) < 0.01);
}

TEST_CASE("communication round: ring worked example")
{
    std::vector<RobotState> states{with_local(0.2, 10.0), with_local(0.5, 10.0),
                                   with_local(0.8, 10.0)};
    communication_round(states, ring(3));
    CHECK(states[1].social.value == doctest::Approx(0.5));
    CHECK(states[1].social.confidence == doctest::Approx(20.0));
    CHECK(states[1].informed.value == doctest::Approx(0.5)); // (0.2+0.5+0.8)/3
    CHECK(states[1].informed.confidence == doctest::Approx(30.0));
    CHECK(states[0].informed.value == doctest::Approx((10 * 0.2 + 10 * 0.5 + 10 * 0.8) / 30));
}

TEST_CASE("communication round: isolated robot keeps informed = local")
{
    Graph g(3);
    g.add_edge(0, 1); // node 2 isolated
    std::vector<RobotState> states{with_local(0.2, 5.0), with_local(0.6, 5.0),
                                   with_local(0.9, 5.0)};
    communication_round(states, g);
    CHECK(states[2].social == EstimatePair{0.0, 0.0});
    CHECK(states[2].informed.value == doctest::Approx(0.9));
    CHECK(states[2].informed.confidence == doctest::Approx(5.0));
    CHECK(states[0].informed.value == doctest::Approx((0.2 * 5 + 0.6 * 5) / 10));
}

TEST_CASE("social values persist across rounds without neighbors")
{
    std::vector<RobotState> states{with_local(0.3, 8.0), with_local(0.7, 8.0)};
    ExchangeScratch scratch;
    NeighborLists linked{{1}, {0}};
    exchange_round(states, linked, scratch, Engine::serial);
    CHECK(states[0].social.value == doctest::Approx(0.7));

    states[0].local = {0.4, 12.0};
    NeighborLists unlinked{{}, {}};
    exchange_round(states, unlinked, scratch, Engine::serial);
    // stale social retained, informed refreshed against it
    CHECK(states[0].social.value == doctest::Approx(0.7));
    CHECK(states[0].social.confidence == doctest::Approx(8.0));
    CHECK(states[0].informed.value == doctest::Approx((0.4 * 12 + 0.7 * 8) / 20));
}

TEST_CASE("synchronous exchange uses pre-round values only")
{
    // In a line 0-1-2, robot 2's social must use robot 1's pre-round local,
    // not the value robot 1 computes this round.
    std::vector<RobotState> states{with_local(0.0, 10.0), with_local(0.5, 10.0),
                                   with_local(1.0, 10.0)};
    communication_round(states, line(3));
    CHECK(states[2].social.value == doctest::Approx(0.5));
    CHECK(states[2].informed.value == doctest::Approx((1.0 * 10 + 0.5 * 10) / 20));
}

TEST_CASE("fully connected robots agree after every round")
{
    StaticTrialConfig cfg = small_config();
    cfg.n_robots = 10;
    cfg.topology = {TopologyKind::fully_connected};
    cfg.accuracy = {AccuracySpec::Mode::heterogeneous, 0.75, 0.75, 0.525, 0.975};
    const TrialRecord record = run_static_trial(cfg);
    for (std::uint32_t round = 0; round < record.rounds; ++round) {
        double lo = 1.0;
        double hi = 0.0;
        for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
            lo = std::min(lo, record.series[i][round].x);
            hi = std::max(hi, record.series[i][round].x);
        }
        CHECK(hi - lo < 1e-9);
    }
}

TEST_CASE("informed estimates stay in range")
{
    const TrialRecord record = run_static_trial(small_config());
    for (const auto& robot : record.series) {
        for (const RoundValues& rv : robot) {
            CHECK(rv.x >= 0.0);
            CHECK(rv.x <= 1.0);
            CHECK(rv.x_hat >= 0.0);
            CHECK(rv.x_hat <= 1.0);
        }
    }
}

TEST_CASE("identical config and seed reproduce the trial bit-exactly")
{
    const TrialRecord a = run_static_trial(small_config());
    const TrialRecord b = run_static_trial(small_config());
    CHECK(a == b);

    StaticTrialConfig other = small_config();
    other.seed = 8;
    CHECK_FALSE(run_static_trial(other) == a);
}

TEST_CASE("serial and openmp engines produce identical records")
{
    for (TopologyKind kind :
         {TopologyKind::fully_connected, TopologyKind::ring, TopologyKind::scale_free}) {
        StaticTrialConfig cfg = small_config();
        cfg.topology.kind = kind;
        const TrialRecord serial = run_static_trial(cfg, Engine::serial);
        const TrialRecord openmp = run_static_trial(cfg, Engine::openmp);
        CHECK(serial == openmp);
    }
}

TEST_CASE("per-step recording matches round boundaries of the default mode")
{
    StaticTrialConfig cfg = small_config();
    const TrialRecord by_round = run_static_trial(cfg);
    cfg.per_step_informed = true;
    const TrialRecord by_step = run_static_trial(cfg);
    CHECK(by_step.rounds == cfg.comm_rounds * cfg.observations_per_round);
    for (std::uint32_t round = 0; round < cfg.comm_rounds; ++round) {
        const std::uint32_t step_row = (round + 1) * cfg.observations_per_round - 1;
        for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
            CHECK(by_step.series[i][step_row] == by_round.series[i][round]);
        }
    }
}

TEST_CASE("config validation")
{
    StaticTrialConfig cfg = small_config();
    cfg.n_robots = 1;
    CHECK_THROWS(run_static_trial(cfg));
    cfg = small_config();
    cfg.accuracy.b = cfg.accuracy.w = 0.5;
    CHECK_THROWS(run_static_trial(cfg));
    cfg = small_config();
    cfg.fill_ratio = 1.5;
    CHECK_THROWS(run_static_trial(cfg));
    cfg = small_config();
    cfg.topology = {TopologyKind::scale_free, 12};
    CHECK_THROWS(run_static_trial(cfg));
}
