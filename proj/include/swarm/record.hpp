#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace swarm {

// The seven stored quantities at one recorded round: the tally is implicit in
// x_hat/alpha, and the schema row is (round, robot, x_hat, alpha, x_bar,
// beta, x).
struct RoundValues {
    double x_hat = 0.0;
    double alpha = 0.0;
    double x_bar = 0.0;
    double beta = 0.0;
    double x = 0.0;

    friend bool operator==(const RoundValues&, const RoundValues&) = default;
};

struct RobotMetrics {
    std::size_t convergence_round = 0;
    double error = 0.0;
    int bin = 0;
    bool converged = true;

    friend bool operator==(const RobotMetrics&, const RobotMetrics&) = default;
};

// Full output of one trial: an ordered parameter echo (enough to re-derive
// the run), the per-robot per-round series, and per-robot final metrics.
struct TrialRecord {
    std::string mode;
    std::string cell;
    std::uint32_t n_robots = 0;
    std::uint32_t rounds = 0;
    double fill_ratio = 0.0;
    double delta = 0.01;
    int bins = 10;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::vector<RoundValues>> series; // [robot][round]
    std::vector<RobotMetrics> robot_metrics;

    std::vector<double> informed_series(std::uint32_t robot) const;

    void write(std::ostream& out) const;
    static TrialRecord read(std::istream& in);

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Number of fields in one series row of the record schema.
inline constexpr int kRecordRowFields = 7;

} // namespace swarm
