#include "swarm/dynamic_sim.hpp"

#include <ostream>

#include "swarm/metrics.hpp"
#include "swarm/seeds.hpp"
#include "swarm/text.hpp"

namespace swarm {

std::string dynamic_cell_label(const ArenaConfig& cfg)
{
    return "acc=" + cfg.accuracy.label() + "|D=" + format_double(cfg.density) +
           "|f=" + format_double(cfg.fill_ratio) +
           "|steps=" + std::to_string(cfg.total_steps);
}

TrialRecord run_dynamic_trial(const ArenaConfig& cfg, Engine engine,
                              std::ostream* trajectory_out)
{
    cfg.validate();

    Rng structure = structure_stream(cfg.seed);
    ArenaLayout layout = build_arena(cfg, structure);

    std::vector<RobotState> states(cfg.n_robots);
    std::vector<Rng> streams;
    streams.reserve(cfg.n_robots);
    for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
        states[i].accuracy = cfg.accuracy.resolve(cfg.seed, i);
        streams.push_back(robot_stream(cfg.seed, i));
    }

    const MotionParams motion{cfg.speed * cfg.tick, cfg.turn_probability,
                              cfg.arena_side()};

    TrialRecord record;
    record.mode = "dynamic";
    record.cell = dynamic_cell_label(cfg);
    record.n_robots = cfg.n_robots;
    record.rounds = cfg.total_steps;
    record.fill_ratio = cfg.fill_ratio;
    record.delta = cfg.delta;
    record.bins = cfg.bins;
    record.series.assign(cfg.n_robots, std::vector<RoundValues>(record.rounds));

    NeighborLists neighbors;
    ExchangeScratch scratch;
    for (std::uint32_t step = 0; step < cfg.total_steps; ++step) {
        move_robots(layout.poses, motion, streams, engine);
        sense_and_observe(states, layout.poses, layout.grid, streams, cfg.alpha_max,
                          engine);
        compute_range_neighbors(layout.poses, cfg.comm_range, motion.arena_side, neighbors,
                                engine);
        exchange_round(states, neighbors, scratch, engine);

        for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
            const RobotState& s = states[i];
            record.series[i][step] = {s.local.value, s.local.confidence, s.social.value,
                                      s.social.confidence, s.informed.value};
            if (trajectory_out) {
                *trajectory_out << step << " " << i << " "
                                << format_double(layout.poses[i].x) << " "
                                << format_double(layout.poses[i].y) << " "
                                << format_double(s.informed.value) << "\n";
            }
        }
    }

    record.robot_metrics.reserve(cfg.n_robots);
    for (std::uint32_t i = 0; i < cfg.n_robots; ++i) {
        record.robot_metrics.push_back(compute_robot_metrics(
            record.informed_series(i), cfg.fill_ratio, cfg.delta, cfg.bins));
    }

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
        {"density", format_double(cfg.density)},
        {"comm_range", format_double(cfg.comm_range)},
        {"speed", format_double(cfg.speed)},
        {"tick", format_double(cfg.tick)},
        {"tile_side", format_double(cfg.resolved_tile_side())},
        {"turn_probability", format_double(cfg.turn_probability)},
        {"arena_side", format_double(motion.arena_side)},
        {"total_steps", std::to_string(cfg.total_steps)},
        {"accuracy", cfg.accuracy.label()},
    };
    if (cfg.accuracy.mode == AccuracySpec::Mode::heterogeneous) {
        std::string values;
        for (const RobotState& s : states) {
            if (!values.empty()) {
                values += ",";
            }
            values += format_double(s.accuracy.b);
        }
        record.params.emplace_back("accuracy_values", values);
    }
    return record;
}

} // namespace swarm
