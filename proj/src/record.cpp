#include "swarm/record.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "swarm/errors.hpp"
#include "swarm/text.hpp"

namespace swarm {

namespace {

constexpr const char* kMagic = "swarm-trial-record v1";

const std::string& require_param(const TrialRecord& r, const std::string& key)
{
    for (const auto& [k, v] : r.params) {
        if (k == key) {
            return v;
        }
    }
    throw ConfigError("record is missing required param '" + key + "'");
}

} // namespace

std::vector<double> TrialRecord::informed_series(std::uint32_t robot) const
{
    std::vector<double> out;
    out.reserve(rounds);
    for (const RoundValues& rv : series[robot]) {
        out.push_back(rv.x);
    }
    return out;
}

void TrialRecord::write(std::ostream& out) const
{
    out << kMagic << "\n";
    for (const auto& [k, v] : params) {
        out << "param " << k << " " << v << "\n";
    }
    out << "columns round robot x_hat alpha x_bar beta x\n";
    for (std::uint32_t round = 0; round < rounds; ++round) {
        for (std::uint32_t robot = 0; robot < n_robots; ++robot) {
            const RoundValues& rv = series[robot][round];
            out << round << " " << robot << " " << format_double(rv.x_hat) << " "
                << format_double(rv.alpha) << " " << format_double(rv.x_bar) << " "
                << format_double(rv.beta) << " " << format_double(rv.x) << "\n";
        }
    }
    out << "metrics robot convergence_round error bin converged\n";
    for (std::uint32_t robot = 0; robot < n_robots; ++robot) {
        const RobotMetrics& m = robot_metrics[robot];
        out << robot << " " << m.convergence_round << " " << format_double(m.error) << " "
            << m.bin << " " << (m.converged ? 1 : 0) << "\n";
    }
    out << "end\n";
}

TrialRecord TrialRecord::read(std::istream& in)
{
    std::string linetext;
    if (!std::getline(in, linetext) || linetext != kMagic) {
        throw ConfigError("not a trial record (bad magic line)");
    }

    TrialRecord r;
    bool in_params = true;
    while (in_params && std::getline(in, linetext)) {
        std::istringstream line(linetext);
        std::string tag;
        line >> tag;
        if (tag == "param") {
            std::string key;
            std::string value;
            line >> key >> value;
            if (key.empty() || value.empty()) {
                throw ConfigError("malformed param line: " + linetext);
            }
            r.params.emplace_back(key, value);
        } else if (tag == "columns") {
            in_params = false;
        } else {
            throw ConfigError("unexpected record line: " + linetext);
        }
    }

    r.mode = require_param(r, "mode");
    r.cell = require_param(r, "cell");
    r.n_robots = static_cast<std::uint32_t>(parse_uint(require_param(r, "n_robots")));
    r.rounds = static_cast<std::uint32_t>(parse_uint(require_param(r, "rounds")));
    r.fill_ratio = parse_double(require_param(r, "fill_ratio"));
    r.delta = parse_double(require_param(r, "delta"));
    r.bins = static_cast<int>(parse_uint(require_param(r, "bins")));

    r.series.assign(r.n_robots, std::vector<RoundValues>(r.rounds));
    std::string tok;
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(r.rounds) * r.n_robots; ++k) {
        std::uint32_t round = 0;
        std::uint32_t robot = 0;
        RoundValues rv;
        if (!(in >> round >> robot)) {
            throw ConfigError("record truncated in series rows");
        }
        if (round >= r.rounds || robot >= r.n_robots) {
            throw ConfigError("series row out of range");
        }
        for (double* field : {&rv.x_hat, &rv.alpha, &rv.x_bar, &rv.beta, &rv.x}) {
            if (!(in >> tok)) {
                throw ConfigError("record truncated in series rows");
            }
            *field = parse_double(tok);
        }
        r.series[robot][round] = rv;
    }

    in >> tok;
    if (tok != "metrics") {
        throw ConfigError("expected metrics section, got '" + tok + "'");
    }
    std::getline(in, linetext); // rest of the metrics header
    r.robot_metrics.assign(r.n_robots, {});
    for (std::uint32_t i = 0; i < r.n_robots; ++i) {
        std::uint32_t robot = 0;
        RobotMetrics m;
        int converged = 0;
        if (!(in >> robot >> m.convergence_round >> tok >> m.bin >> converged)) {
            throw ConfigError("record truncated in metrics rows");
        }
        m.error = parse_double(tok);
        m.converged = converged != 0;
        if (robot >= r.n_robots) {
            throw ConfigError("metrics row out of range");
        }
        r.robot_metrics[robot] = m;
    }
    in >> tok;
    if (tok != "end") {
        throw ConfigError("record missing end marker");
    }
    return r;
}

} // namespace swarm
