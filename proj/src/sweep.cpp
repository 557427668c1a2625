#include "swarm/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarm/dynamic_sim.hpp"
#include "swarm/errors.hpp"
#include "swarm/seeds.hpp"
#include "swarm/sha256.hpp"
#include "swarm/text.hpp"

namespace swarm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestFormat = "swarm-sweep-manifest v1";

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError("missing required key '" + std::string(key) + "' in " + where);
    }
    return *it;
}

double get_number(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        throw ConfigError(where + " must be a number");
    }
    return v.get<double>();
}

std::uint64_t get_uint(const json& v, const std::string& where)
{
    if (!v.is_number_unsigned()) {
        throw ConfigError(where + " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

AccuracySpec parse_accuracy(const json& v, const std::string& where)
{
    if (!v.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    require_keys(v, where, {"b", "w", "heterogeneous"});
    AccuracySpec spec;
    if (v.contains("heterogeneous")) {
        if (v.contains("b") || v.contains("w")) {
            throw ConfigError(where + ": heterogeneous excludes b/w");
        }
        const json& bounds = v["heterogeneous"];
        if (!bounds.is_array() || bounds.size() != 2) {
            throw ConfigError(where + ".heterogeneous must be [lo, hi]");
        }
        spec.mode = AccuracySpec::Mode::heterogeneous;
        spec.lo = get_number(bounds[0], where + ".heterogeneous[0]");
        spec.hi = get_number(bounds[1], where + ".heterogeneous[1]");
    } else {
        spec.mode = AccuracySpec::Mode::homogeneous;
        spec.b = get_number(require_field(v, "b", where), where + ".b");
        spec.w = v.contains("w") ? get_number(v["w"], where + ".w") : spec.b;
    }
    spec.validate();
    return spec;
}

TopologyDescriptor parse_topology(const json& v, const std::string& where)
{
    if (!v.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    require_keys(v, where, {"kind", "attach"});
    TopologyDescriptor desc;
    if (!require_field(v, "kind", where).is_string()) {
        throw ConfigError(where + ".kind must be a string");
    }
    desc.kind = topology_kind_from_string(v["kind"].get<std::string>());
    if (v.contains("attach")) {
        if (desc.kind != TopologyKind::scale_free) {
            throw ConfigError(where + ": attach applies only to scale_free");
        }
        desc.attach = static_cast<std::size_t>(get_uint(v["attach"], where + ".attach"));
    }
    return desc;
}

json accuracy_to_json(const AccuracySpec& a)
{
    if (a.mode == AccuracySpec::Mode::heterogeneous) {
        return json{{"heterogeneous", {a.lo, a.hi}}};
    }
    return json{{"b", a.b}, {"w", a.w}};
}

json spec_to_json(const SweepSpec& spec)
{
    json j;
    j["mode"] = spec.mode_name();
    j["trials_per_cell"] = spec.trials_per_cell;
    j["base_seed"] = spec.base_seed;
    json defaults;
    defaults["n_robots"] = spec.n_robots;
    defaults["delta"] = spec.delta;
    defaults["bins"] = spec.bins;
    defaults["alpha_max"] = spec.alpha_max;
    if (spec.mode == SweepSpec::Mode::static_graph) {
        defaults["per_step_informed"] = spec.per_step_informed;
    } else {
        defaults["comm_range"] = spec.comm_range;
        defaults["speed"] = spec.speed;
        defaults["tick"] = spec.tick;
        defaults["tile_side"] = spec.tile_side;
        defaults["turn_probability"] = spec.turn_probability;
    }
    j["defaults"] = defaults;

    json axes;
    json accs = json::array();
    for (const AccuracySpec& a : spec.accuracies) {
        accs.push_back(accuracy_to_json(a));
    }
    axes["accuracies"] = accs;
    axes["fill_ratios"] = spec.fill_ratios;
    if (spec.mode == SweepSpec::Mode::static_graph) {
        json topos = json::array();
        for (const TopologyDescriptor& t : spec.topologies) {
            json jt;
            switch (t.kind) {
            case TopologyKind::fully_connected:
                jt["kind"] = "fully_connected";
                break;
            case TopologyKind::ring:
                jt["kind"] = "ring";
                break;
            case TopologyKind::line:
                jt["kind"] = "line";
                break;
            case TopologyKind::scale_free:
                jt["kind"] = "scale_free";
                jt["attach"] = t.attach;
                break;
            }
            topos.push_back(jt);
        }
        axes["topologies"] = topos;
        json scheds = json::array();
        for (const StaticSchedule& s : spec.schedules) {
            scheds.push_back(json{{"rounds", s.comm_rounds},
                                  {"observations_per_round", s.observations_per_round}});
        }
        axes["schedules"] = scheds;
    } else {
        axes["densities"] = spec.densities;
        axes["step_counts"] = spec.step_counts;
    }
    j["axes"] = axes;
    return j;
}

} // namespace

std::size_t SweepSpec::cell_count() const
{
    const std::size_t structure = mode == Mode::static_graph ? topologies.size() : densities.size();
    const std::size_t schedule = mode == Mode::static_graph ? schedules.size() : step_counts.size();
    return accuracies.size() * fill_ratios.size() * structure * schedule;
}

namespace {

struct CellIndices {
    std::size_t accuracy;
    std::size_t fill;
    std::size_t structure;
    std::size_t schedule;
};

CellIndices decompose_cell(const SweepSpec& spec, std::size_t cell)
{
    const std::size_t structure_count = spec.mode == SweepSpec::Mode::static_graph
                                            ? spec.topologies.size()
                                            : spec.densities.size();
    const std::size_t schedule_count = spec.mode == SweepSpec::Mode::static_graph
                                           ? spec.schedules.size()
                                           : spec.step_counts.size();
    CellIndices idx{};
    idx.schedule = cell % schedule_count;
    cell /= schedule_count;
    idx.structure = cell % structure_count;
    cell /= structure_count;
    idx.fill = cell % spec.fill_ratios.size();
    idx.accuracy = cell / spec.fill_ratios.size();
    return idx;
}

} // namespace

StaticTrialConfig SweepSpec::static_config(std::size_t cell, std::uint32_t trial) const
{
    const CellIndices idx = decompose_cell(*this, cell);
    StaticTrialConfig cfg;
    cfg.n_robots = n_robots;
    cfg.accuracy = accuracies[idx.accuracy];
    cfg.fill_ratio = fill_ratios[idx.fill];
    cfg.topology = topologies[idx.structure];
    cfg.comm_rounds = schedules[idx.schedule].comm_rounds;
    cfg.observations_per_round = schedules[idx.schedule].observations_per_round;
    cfg.delta = delta;
    cfg.bins = bins;
    cfg.alpha_max = alpha_max;
    cfg.per_step_informed = per_step_informed;
    cfg.seed = trial_seed(base_seed, cell, trial);
    return cfg;
}

ArenaConfig SweepSpec::dynamic_config(std::size_t cell, std::uint32_t trial) const
{
    const CellIndices idx = decompose_cell(*this, cell);
    ArenaConfig cfg;
    cfg.n_robots = n_robots;
    cfg.accuracy = accuracies[idx.accuracy];
    cfg.fill_ratio = fill_ratios[idx.fill];
    cfg.density = densities[idx.structure];
    cfg.total_steps = step_counts[idx.schedule];
    cfg.comm_range = comm_range;
    cfg.speed = speed;
    cfg.tick = tick;
    cfg.tile_side = tile_side;
    cfg.turn_probability = turn_probability;
    cfg.delta = delta;
    cfg.bins = bins;
    cfg.alpha_max = alpha_max;
    cfg.seed = trial_seed(base_seed, cell, trial);
    return cfg;
}

void SweepSpec::validate() const
{
    if (trials_per_cell < 1) {
        throw ConfigError("trials_per_cell must be at least 1");
    }
    if (accuracies.empty()) {
        throw ConfigError("axes.accuracies must not be empty");
    }
    if (fill_ratios.empty()) {
        throw ConfigError("axes.fill_ratios must not be empty");
    }
    for (const AccuracySpec& a : accuracies) {
        a.validate();
    }
    for (double f : fill_ratios) {
        if (f < 0.0 || f > 1.0) {
            throw ConfigError("fill ratios must lie in [0,1]");
        }
    }
    if (mode == Mode::static_graph) {
        if (topologies.empty()) {
            throw ConfigError("axes.topologies must not be empty");
        }
        if (schedules.empty()) {
            throw ConfigError("axes.schedules must not be empty");
        }
        // Let per-trial validation speak with its own messages early.
        for (std::size_t c = 0; c < cell_count(); ++c) {
            static_config(c, 0).validate();
        }
    } else {
        if (densities.empty()) {
            throw ConfigError("axes.densities must not be empty");
        }
        if (step_counts.empty()) {
            throw ConfigError("axes.step_counts must not be empty");
        }
        for (std::size_t c = 0; c < cell_count(); ++c) {
            dynamic_config(c, 0).validate();
        }
    }
}

SweepSpec load_config_text(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config root must be an object");
    }
    require_keys(root, "config",
                 {"mode", "trials_per_cell", "base_seed", "output_dir", "defaults", "axes"});

    SweepSpec spec;
    const json& mode = require_field(root, "mode", "config");
    if (!mode.is_string()) {
        throw ConfigError("mode must be a string");
    }
    const std::string mode_name = mode.get<std::string>();
    if (mode_name == "static") {
        spec.mode = SweepSpec::Mode::static_graph;
    } else if (mode_name == "dynamic") {
        spec.mode = SweepSpec::Mode::dynamic_arena;
    } else {
        throw ConfigError("mode must be 'static' or 'dynamic', got '" + mode_name + "'");
    }
    spec.trials_per_cell = static_cast<std::uint32_t>(
        get_uint(require_field(root, "trials_per_cell", "config"), "trials_per_cell"));
    spec.base_seed = get_uint(require_field(root, "base_seed", "config"), "base_seed");
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) {
            throw ConfigError("output_dir must be a string");
        }
        spec.output_dir = root["output_dir"].get<std::string>();
    }

    const json& defaults = require_field(root, "defaults", "config");
    if (!defaults.is_object()) {
        throw ConfigError("defaults must be an object");
    }
    if (spec.mode == SweepSpec::Mode::static_graph) {
        require_keys(defaults, "defaults",
                     {"n_robots", "delta", "bins", "alpha_max", "per_step_informed"});
    } else {
        require_keys(defaults, "defaults",
                     {"n_robots", "delta", "bins", "alpha_max", "comm_range", "speed",
                      "tick", "tile_side", "turn_probability"});
    }
    spec.n_robots = static_cast<std::uint32_t>(
        get_uint(require_field(defaults, "n_robots", "defaults"), "defaults.n_robots"));
    if (defaults.contains("delta")) {
        spec.delta = get_number(defaults["delta"], "defaults.delta");
    }
    if (defaults.contains("bins")) {
        spec.bins = static_cast<int>(get_uint(defaults["bins"], "defaults.bins"));
    }
    if (defaults.contains("alpha_max")) {
        spec.alpha_max = get_number(defaults["alpha_max"], "defaults.alpha_max");
    }
    if (defaults.contains("per_step_informed")) {
        if (!defaults["per_step_informed"].is_boolean()) {
            throw ConfigError("defaults.per_step_informed must be a boolean");
        }
        spec.per_step_informed = defaults["per_step_informed"].get<bool>();
    }
    if (defaults.contains("comm_range")) {
        spec.comm_range = get_number(defaults["comm_range"], "defaults.comm_range");
    }
    if (defaults.contains("speed")) {
        spec.speed = get_number(defaults["speed"], "defaults.speed");
    }
    if (defaults.contains("tick")) {
        spec.tick = get_number(defaults["tick"], "defaults.tick");
    }
    if (defaults.contains("tile_side")) {
        spec.tile_side = get_number(defaults["tile_side"], "defaults.tile_side");
    }
    if (defaults.contains("turn_probability")) {
        spec.turn_probability =
            get_number(defaults["turn_probability"], "defaults.turn_probability");
    }

    const json& axes = require_field(root, "axes", "config");
    if (!axes.is_object()) {
        throw ConfigError("axes must be an object");
    }
    if (spec.mode == SweepSpec::Mode::static_graph) {
        require_keys(axes, "axes", {"accuracies", "fill_ratios", "topologies", "schedules"});
    } else {
        require_keys(axes, "axes", {"accuracies", "fill_ratios", "densities", "step_counts"});
    }

    const json& accs = require_field(axes, "accuracies", "axes");
    if (!accs.is_array()) {
        throw ConfigError("axes.accuracies must be an array");
    }
    for (std::size_t i = 0; i < accs.size(); ++i) {
        spec.accuracies.push_back(
            parse_accuracy(accs[i], "axes.accuracies[" + std::to_string(i) + "]"));
    }
    const json& fills = require_field(axes, "fill_ratios", "axes");
    if (!fills.is_array()) {
        throw ConfigError("axes.fill_ratios must be an array");
    }
    for (std::size_t i = 0; i < fills.size(); ++i) {
        spec.fill_ratios.push_back(
            get_number(fills[i], "axes.fill_ratios[" + std::to_string(i) + "]"));
    }

    if (spec.mode == SweepSpec::Mode::static_graph) {
        const json& topos = require_field(axes, "topologies", "axes");
        if (!topos.is_array()) {
            throw ConfigError("axes.topologies must be an array");
        }
        for (std::size_t i = 0; i < topos.size(); ++i) {
            spec.topologies.push_back(
                parse_topology(topos[i], "axes.topologies[" + std::to_string(i) + "]"));
        }
        if (axes.contains("schedules")) {
            const json& scheds = axes["schedules"];
            if (!scheds.is_array()) {
                throw ConfigError("axes.schedules must be an array");
            }
            for (std::size_t i = 0; i < scheds.size(); ++i) {
                const std::string where = "axes.schedules[" + std::to_string(i) + "]";
                require_keys(scheds[i], where, {"rounds", "observations_per_round"});
                StaticSchedule s;
                s.comm_rounds = static_cast<std::uint32_t>(
                    get_uint(require_field(scheds[i], "rounds", where), where + ".rounds"));
                s.observations_per_round = static_cast<std::uint32_t>(get_uint(
                    require_field(scheds[i], "observations_per_round", where),
                    where + ".observations_per_round"));
                spec.schedules.push_back(s);
            }
        } else {
            spec.schedules.push_back({});
        }
    } else {
        const json& dens = require_field(axes, "densities", "axes");
        if (!dens.is_array()) {
            throw ConfigError("axes.densities must be an array");
        }
        for (std::size_t i = 0; i < dens.size(); ++i) {
            spec.densities.push_back(
                get_number(dens[i], "axes.densities[" + std::to_string(i) + "]"));
        }
        if (axes.contains("step_counts")) {
            const json& steps = axes["step_counts"];
            if (!steps.is_array()) {
                throw ConfigError("axes.step_counts must be an array");
            }
            for (std::size_t i = 0; i < steps.size(); ++i) {
                spec.step_counts.push_back(static_cast<std::uint32_t>(get_uint(
                    steps[i], "axes.step_counts[" + std::to_string(i) + "]")));
            }
        } else {
            spec.step_counts.push_back(10000);
        }
    }

    spec.validate();
    return spec;
}

SweepSpec load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_config_text(text.str());
}

namespace {

std::string record_filename(std::size_t cell, std::uint32_t trial, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "cell%04zu_trial%03u.%s", cell, trial, ext);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("failed to write " + path.string());
    }
}

struct RunSlot {
    bool attempted = false;
    std::string error;
    std::string record_file;
    std::string trajectory_file;
    TrialExtract extract;
};

} // namespace

SweepOutcome run_sweep(const SweepSpec& spec, const fs::path& out_dir,
                       const SweepOptions& options)
{
    spec.validate();
    if (options.parallelism < 1) {
        throw ConfigError("parallelism must be at least 1");
    }
    const fs::path records_dir = out_dir / "records";
    fs::create_directories(records_dir);

    const std::size_t total = spec.run_count();
    std::vector<RunSlot> slots(total);
    std::atomic<bool> io_failed{false};
    std::string io_error;

#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(options.parallelism))
    for (std::int64_t run = 0; run < static_cast<std::int64_t>(total); ++run) {
        if (io_failed.load(std::memory_order_relaxed)) {
            continue;
        }
        const std::size_t cell = static_cast<std::size_t>(run) / spec.trials_per_cell;
        const auto trial = static_cast<std::uint32_t>(
            static_cast<std::size_t>(run) % spec.trials_per_cell);
        RunSlot& slot = slots[static_cast<std::size_t>(run)];
        slot.attempted = true;

        TrialRecord record;
        std::string trajectory;
        try {
            if (spec.mode == SweepSpec::Mode::static_graph) {
                record = run_static_trial(spec.static_config(cell, trial), options.engine);
            } else if (options.trajectories) {
                std::ostringstream traj;
                record = run_dynamic_trial(spec.dynamic_config(cell, trial),
                                           options.engine, &traj);
                trajectory = traj.str();
            } else {
                record = run_dynamic_trial(spec.dynamic_config(cell, trial), options.engine);
            }
        } catch (const std::exception& e) {
            slot.error = e.what();
            continue;
        }

        try {
            slot.record_file = record_filename(cell, trial, "rec");
            std::ostringstream body;
            record.write(body);
            write_text_file(records_dir / slot.record_file, body.str());
            if (!trajectory.empty()) {
                slot.trajectory_file = record_filename(cell, trial, "traj");
                write_text_file(records_dir / slot.trajectory_file, trajectory);
            }
            slot.extract = extract_trial(record);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                if (!io_failed.exchange(true)) {
                    io_error = e.what();
                }
            }
        }
    }
    if (io_failed.load()) {
        throw std::runtime_error("sweep aborted on I/O failure: " + io_error);
    }

    // Deterministic post-pass in run order, independent of scheduling.
    CellTable table;
    json records = json::array();
    json errors = json::array();
    std::size_t completed = 0;
    for (std::size_t run = 0; run < total; ++run) {
        const std::size_t cell = run / spec.trials_per_cell;
        const auto trial = static_cast<std::uint32_t>(run % spec.trials_per_cell);
        const RunSlot& slot = slots[run];
        if (!slot.error.empty()) {
            errors.push_back(json{{"cell_index", cell},
                                  {"trial", trial},
                                  {"message", slot.error}});
            continue;
        }
        completed += 1;
        table.add(slot.extract);
        json entry;
        entry["file"] = "records/" + slot.record_file;
        entry["sha256"] = sha256_file(records_dir / slot.record_file);
        entry["cell_index"] = cell;
        entry["trial"] = trial;
        entry["cell"] = slot.extract.cell;
        records.push_back(entry);
        if (!slot.trajectory_file.empty()) {
            json traj;
            traj["file"] = "records/" + slot.trajectory_file;
            traj["sha256"] = sha256_file(records_dir / slot.trajectory_file);
            traj["cell_index"] = cell;
            traj["trial"] = trial;
            records.push_back(traj);
        }
    }

    const std::vector<CellSummary> summaries = table.finalize();
    {
        std::ostringstream body;
        write_summary_csv(body, summaries);
        write_text_file(out_dir / "summary.csv", body.str());
    }
    {
        std::ostringstream body;
        write_consensus_csv(body, summaries);
        write_text_file(out_dir / "consensus.csv", body.str());
    }

    json manifest;
    manifest["format"] = kManifestFormat;
    manifest["mode"] = spec.mode_name();
    manifest["base_seed"] = spec.base_seed;
    manifest["trials_per_cell"] = spec.trials_per_cell;
    manifest["cell_count"] = spec.cell_count();
    manifest["run_count"] = total;
    manifest["runs_completed"] = completed;
    manifest["resolved_config"] = spec_to_json(spec);
    manifest["records"] = records;
    manifest["errors"] = errors;
    manifest["tables"] = json::array({"summary.csv", "consensus.csv"});

    SweepOutcome outcome;
    outcome.runs_completed = completed;
    outcome.runs_failed = total - completed;
    outcome.manifest_path = out_dir / "manifest.json";
    write_text_file(outcome.manifest_path, manifest.dump(2) + "\n");
    return outcome;
}

std::vector<CellSummary> analyze(const fs::path& result_dir, const fs::path& out_dir)
{
    const fs::path manifest_path = result_dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) {
        throw ConfigError("no manifest.json in " + result_dir.string());
    }
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("corrupt manifest: " + std::string(e.what()));
    }
    if (!manifest.is_object() || manifest.value("format", "") != kManifestFormat) {
        throw ConfigError("unrecognized manifest format in " + manifest_path.string());
    }

    CellTable table;
    for (const json& entry : manifest.at("records")) {
        const std::string name = entry.at("file").get<std::string>();
        const fs::path path = result_dir / name;
        if (!fs::exists(path)) {
            throw ConfigError("missing record file: " + name);
        }
        const std::string expected = entry.at("sha256").get<std::string>();
        const std::string actual = sha256_file(path);
        if (actual != expected) {
            throw ConfigError("record integrity failure (hash mismatch): " + name);
        }
        if (path.extension() != ".rec") {
            continue; // trajectory dumps are verified but not aggregated
        }
        std::ifstream rec(path, std::ios::binary);
        try {
            table.add(extract_trial(TrialRecord::read(rec)));
        } catch (const std::exception& e) {
            throw ConfigError("corrupt record " + name + ": " + e.what());
        }
    }

    fs::create_directories(out_dir);
    const std::vector<CellSummary> summaries = table.finalize();
    {
        std::ostringstream body;
        write_summary_csv(body, summaries);
        write_text_file(out_dir / "summary.csv", body.str());
    }
    {
        std::ostringstream body;
        write_consensus_csv(body, summaries);
        write_text_file(out_dir / "consensus.csv", body.str());
    }
    return summaries;
}

} // namespace swarm
