#include "swarm/static_sim.hpp"

#include <utility>

#include "swarm/errors.hpp"
#include "swarm/metrics.hpp"
#include "swarm/seeds.hpp"
#include "swarm/text.hpp"

namespace swarm {

std::string StaticTrialConfig::cell_label() const
{
    return "acc=" + accuracy.label() + "|topo=" + topology.label() +
           "|f=" + format_double(fill_ratio) + "|C=" + std::to_string(comm_rounds) +
           "_R=" + std::to_string(observations_per_round);
}

void StaticTrialConfig::validate() const
{
    if (n_robots < 2) {
        throw ConfigError("static trials need at least 2 robots");
    }
    if (fill_ratio < 0.0 || fill_ratio > 1.0) {
        throw ConfigError("fill_ratio must lie in [0,1]");
    }
    if (comm_rounds < 1 || observations_per_round < 1) {
        throw ConfigError("comm_rounds and observations_per_round must be at least 1");
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
    if (topology.kind == TopologyKind::ring && n_robots < 3) {
        throw ConfigError("ring topology needs at least 3 robots");
    }
    if (topology.kind == TopologyKind::scale_free &&
        (topology.attach < 1 || topology.attach >= n_robots)) {
        throw ConfigError("scale-free attach count must satisfy 1 <= m < n_robots");
    }
    accuracy.validate();
}

void communication_round(std::span<RobotState> states, const Graph& graph, Engine engine)
{
    if (graph.node_count() != states.size()) {
        throw std::invalid_argument("graph size does not match robot count");
    }
    ExchangeScratch scratch;
    exchange_round(states, graph.adjacency(), scratch, engine);
}

namespace {

void record_round(TrialRecord& record, std::span<const RobotState> states,
                  std::uint32_t index)
{
    for (std::uint32_t i = 0; i < states.size(); ++i) {
        const RobotState& s = states[i];
        record.series[i][index] = {s.local.value, s.local.confidence, s.social.value,
                                   s.social.confidence, s.informed.value};
    }
}

void finish_record(TrialRecord& record)
{
    record.robot_metrics.reserve(record.n_robots);
    for (std::uint32_t i = 0; i < record.n_robots; ++i) {
        record.robot_metrics.push_back(compute_robot_metrics(
            record.informed_series(i), record.fill_ratio, record.delta, record.bins));
    }
}

std::string joined_accuracies(std::span<const RobotState> states)
{
    std::string out;
    for (const RobotState& s : states) {
        if (!out.empty()) {
            out += ",";
        }
        out += format_double(s.accuracy.b);
    }
    return out;
}

} // namespace

TrialRecord run_static_trial(const StaticTrialConfig& cfg, Engine engine)
{
    cfg.validate();

    Rng structure = structure_stream(cfg.seed);
    const Graph graph = build_topology(cfg.topology, cfg.n_robots, structure);

    std::vector<RobotState> states(cfg.n_robots);
    std::vector<Rng> streams;
    streams.reserve(cfg.n_robots);
    for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
        states[i].accuracy = cfg.accuracy.resolve(cfg.seed, i);
        streams.push_back(robot_stream(cfg.seed, i));
    }

    TrialRecord record;
    record.mode = "static";
    record.cell = cfg.cell_label();
    record.n_robots = cfg.n_robots;
    record.rounds = cfg.recorded_rounds();
    record.fill_ratio = cfg.fill_ratio;
    record.delta = cfg.delta;
    record.bins = cfg.bins;
    record.series.assign(cfg.n_robots, std::vector<RoundValues>(record.rounds));

    ExchangeScratch scratch;
    std::uint32_t row = 0;
    for (std::uint32_t round = 0; round < cfg.comm_rounds; ++round) {
        if (!cfg.per_step_informed) {
            observe_block(states, streams, cfg.fill_ratio, cfg.observations_per_round,
                          cfg.alpha_max, engine);
            exchange_round(states, graph.adjacency(), scratch, engine);
            record_round(record, states, row++);
        } else {
            for (std::uint32_t step = 0; step < cfg.observations_per_round; ++step) {
                observe_block(states, streams, cfg.fill_ratio, 1, cfg.alpha_max, engine);
                if (step + 1 == cfg.observations_per_round) {
                    exchange_round(states, graph.adjacency(), scratch, engine);
                } else {
                    refresh_informed_all(states, engine);
                }
                record_round(record, states, row++);
            }
        }
    }
    finish_record(record);

    record.params = {
        {"mode", record.mode},
        {"cell", record.cell},
        {"n_robots", std::to_string(cfg.n_robots)},
        {"rounds", std::to_string(record.rounds)},
        {"fill_ratio", format_double(cfg.fill_ratio)},
        {"delta", format_double(cfg.delta)},
        {"bins", std::to_string(cfg.bins)},
        {"alpha_max", format_double(cfg.alpha_max)},
        {"seed", std::to_string(cfg.seed)},
        {"topology", cfg.topology.label()},
        {"accuracy", cfg.accuracy.label()},
        {"comm_rounds", std::to_string(cfg.comm_rounds)},
        {"observations_per_round", std::to_string(cfg.observations_per_round)},
        {"per_step_informed", cfg.per_step_informed ? "1" : "0"},
    };
    if (cfg.accuracy.mode == AccuracySpec::Mode::heterogeneous) {
        record.params.emplace_back("accuracy_values", joined_accuracies(states));
    }
    return record;
}

} // namespace swarm
