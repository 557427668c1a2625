// Command-line front end: run sweeps, analyze result directories, validate
// configs, and emit topology edge lists.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swarm/errors.hpp"
#include "swarm/sweep.hpp"
#include "swarm/text.hpp"
#include "swarm/topology.hpp"

namespace {

constexpr const char* kSeedEnvVar = "SWARMSIM_BASE_SEED";

struct RunArgs {
    std::string config;
    std::string out;
    unsigned parallelism = 1;
    std::string engine = "parallel";
    std::string mode;
    bool trajectories = false;
};

struct AnalyzeArgs {
    std::string in;
    std::string out;
};

struct GraphArgs {
    std::string kind;
    std::size_t nodes = 0;
    std::size_t attach = 2;
    std::uint64_t seed = 0;
    std::string out;
};

swarm::SweepSpec load_spec(const std::string& path, const std::string& mode_override)
{
    swarm::SweepSpec spec = swarm::load_config(path);
    if (!mode_override.empty() && mode_override != spec.mode_name()) {
        throw swarm::ConfigError("--mode " + mode_override + " does not match config mode '" +
                                 spec.mode_name() + "'");
    }
    return spec;
}

void apply_seed_override(swarm::SweepSpec& spec)
{
    if (const char* env = std::getenv(kSeedEnvVar)) {
        spec.base_seed = swarm::parse_uint(env);
        std::cerr << "base_seed overridden to " << spec.base_seed << " by " << kSeedEnvVar
                  << "\n";
    }
}

int do_run(const RunArgs& args)
{
    swarm::SweepSpec spec = load_spec(args.config, args.mode);
    apply_seed_override(spec);
    std::string out = args.out;
    if (out.empty()) {
        if (!spec.output_dir) {
            throw swarm::ConfigError("no output directory: pass --out or set output_dir");
        }
        out = *spec.output_dir;
    }
    swarm::SweepOptions options;
    options.parallelism = args.parallelism;
    options.engine = swarm::engine_from_string(args.engine);
    options.trajectories = args.trajectories;

    const swarm::SweepOutcome outcome = swarm::run_sweep(spec, out, options);
    std::cout << "completed " << outcome.runs_completed << "/" << spec.run_count()
              << " runs";
    if (outcome.runs_failed > 0) {
        std::cout << " (" << outcome.runs_failed << " failed; see manifest errors)";
    }
    std::cout << "\nmanifest: " << outcome.manifest_path.string() << "\n";
    return outcome.runs_failed == 0 ? 0 : 2;
}

int do_analyze(const AnalyzeArgs& args)
{
    const auto summaries = swarm::analyze(args.in, args.out);
    std::cout << "analyzed " << summaries.size() << " cell(s); tables written to "
              << args.out << "\n";
    return 0;
}

int do_validate(const std::string& config)
{
    const swarm::SweepSpec spec = swarm::load_config(config);
    std::cout << "config OK: mode=" << spec.mode_name() << " cells=" << spec.cell_count()
              << " trials_per_cell=" << spec.trials_per_cell
              << " total_runs=" << spec.run_count() << "\n";
    return 0;
}

int do_graph(const GraphArgs& args)
{
    const swarm::TopologyDescriptor desc{swarm::topology_kind_from_string(args.kind),
                                         args.attach};
    swarm::Rng rng = swarm::make_stream(args.seed);
    const swarm::Graph graph = swarm::build_topology(desc, args.nodes, rng);
    if (args.out.empty()) {
        graph.write_edge_list(std::cout);
    } else {
        std::ofstream out(args.out);
        graph.write_edge_list(out);
        if (!out) {
            throw std::runtime_error("failed to write " + args.out);
        }
        std::cout << "wrote " << graph.edge_count() << " edges to " << args.out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"swarm collective fill-ratio estimation: sweeps, analysis, topologies"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "execute a sweep config");
    run->add_option("--config", run_args.config, "sweep config (JSON)")->required();
    run->add_option("--out", run_args.out, "output directory");
    run->add_option("--parallelism", run_args.parallelism, "concurrent trials")
        ->check(CLI::PositiveNumber);
    run->add_option("--engine", run_args.engine, "serial|parallel kernels")
        ->check(CLI::IsMember({"serial", "parallel"}));
    run->add_option("--mode", run_args.mode, "assert the config mode")
        ->check(CLI::IsMember({"static", "dynamic"}));
    run->add_flag("--trajectories", run_args.trajectories,
                  "dump per-step poses (dynamic mode)");

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand("analyze", "rebuild tables from results");
    analyze->add_option("--in", analyze_args.in, "result directory")->required();
    analyze->add_option("--out", analyze_args.out, "table output directory")->required();

    std::string validate_config;
    CLI::App* validate = app.add_subcommand("validate", "check a sweep config");
    validate->add_option("--config", validate_config, "sweep config (JSON)")->required();

    GraphArgs graph_args;
    CLI::App* graph = app.add_subcommand("graph", "emit a topology edge list");
    graph->add_option("--kind", graph_args.kind,
                      "fully_connected|ring|line|scale_free")->required();
    graph->add_option("--nodes", graph_args.nodes, "node count")->required();
    graph->add_option("--attach", graph_args.attach, "scale-free links per node");
    graph->add_option("--seed", graph_args.seed, "generator seed");
    graph->add_option("--out", graph_args.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            return do_run(run_args);
        }
        if (analyze->parsed()) {
            return do_analyze(analyze_args);
        }
        if (validate->parsed()) {
            return do_validate(validate_config);
        }
        if (graph->parsed()) {
            return do_graph(graph_args);
        }
    } catch (const swarm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
