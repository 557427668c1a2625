#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swarm/arena.hpp"
#include "swarm/kernels.hpp"
#include "swarm/metrics.hpp"
#include "swarm/static_sim.hpp"

namespace swarm {

struct StaticSchedule {
    std::uint32_t comm_rounds = 1000;
    std::uint32_t observations_per_round = 10;
};

// Cartesian experiment matrix: accuracy x fill ratio x (topology | density)
// x schedule, each cell run trials_per_cell times with seeds derived from
// (base_seed, cell index, trial index).
struct SweepSpec {
    enum class Mode { static_graph, dynamic_arena };

    Mode mode = Mode::static_graph;
    std::uint32_t trials_per_cell = 1;
    std::uint64_t base_seed = 0;
    std::optional<std::string> output_dir;

    // shared defaults
    std::uint32_t n_robots = 100;
    double delta = 0.01;
    int bins = 10;
    double alpha_max = kDefaultConfidenceCap;
    bool per_step_informed = false;

    // dynamic-only defaults
    double comm_range = 0.7;
    double speed = 0.14;
    double tick = 0.1;
    double tile_side = 0.0;
    double turn_probability = 0.1;

    // axes
    std::vector<AccuracySpec> accuracies;
    std::vector<double> fill_ratios;
    std::vector<TopologyDescriptor> topologies; // static mode
    std::vector<double> densities;              // dynamic mode
    std::vector<StaticSchedule> schedules;      // static mode
    std::vector<std::uint32_t> step_counts;     // dynamic mode

    std::size_t cell_count() const;
    std::size_t run_count() const { return cell_count() * trials_per_cell; }
    std::string mode_name() const
    {
        return mode == Mode::static_graph ? "static" : "dynamic";
    }

    // Resolved per-run configs. The cell index enumerates the axes with
    // accuracy outermost and schedule innermost.
    StaticTrialConfig static_config(std::size_t cell, std::uint32_t trial) const;
    ArenaConfig dynamic_config(std::size_t cell, std::uint32_t trial) const;

    void validate() const; // throws ConfigError
};

// Strict JSON config parsing: unknown keys anywhere are errors.
SweepSpec load_config_text(const std::string& json_text);
SweepSpec load_config(const std::filesystem::path& path);

struct SweepOptions {
    unsigned parallelism = 1;
    Engine engine = Engine::openmp;
    bool trajectories = false; // dynamic mode: dump per-step poses
};

struct SweepOutcome {
    std::size_t runs_completed = 0;
    std::size_t runs_failed = 0;
    std::filesystem::path manifest_path;
};

// Executes every (cell, trial) run, writing records/cell####_trial###.rec,
// summary.csv, consensus.csv, and manifest.json (resolved config + sha256 of
// every emitted file) under out_dir. Re-running the same spec reproduces the
// same bytes regardless of parallelism. Per-run simulation failures are
// recorded in the manifest without aborting the sweep; I/O failures abort.
SweepOutcome run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                       const SweepOptions& options = {});

// Re-derives the summary tables from a result directory, verifying every
// record against the manifest hashes first.
std::vector<CellSummary> analyze(const std::filesystem::path& result_dir,
                                 const std::filesystem::path& out_dir);

} // namespace swarm
