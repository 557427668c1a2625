#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarm/record.hpp"

namespace swarm {

// Smallest index K such that every later value stays within delta of
// series[K]. The last index always qualifies, so a result equal to it means
// the series never settled earlier.
std::size_t convergence_round(std::span<const double> series, double delta);

// Absolute estimation error |series[k] - fill_ratio|.
double accuracy(std::span<const double> series, std::size_t k, double fill_ratio);

// Best-of-B decision: bins partition [0,1] half-open with the last bin
// closed, 1-based. Exact bin boundaries k/B belong to bin k+1.
int decide_bin(double estimate, int bins);

// Fraction of estimates falling in the same bin as the true fill ratio.
double consensus_fraction(std::span<const double> estimates, double fill_ratio, int bins);

RobotMetrics compute_robot_metrics(std::span<const double> informed_series,
                                   double fill_ratio, double delta, int bins);

// Per-cell aggregate over all robots x trials.
struct CellSummary {
    std::string cell;
    std::string mode;
    std::uint32_t rounds = 0;
    std::size_t trials = 0;
    std::size_t samples = 0;
    std::size_t nonconverged = 0;
    double k_median = 0.0;
    double k_q1 = 0.0;
    double k_q3 = 0.0;
    double err_median = 0.0;
    double err_q1 = 0.0;
    double err_q3 = 0.0;
    std::optional<std::size_t> consensus_round; // first round of full agreement
    std::vector<double> consensus_curve;        // fraction correct per round
};

// Light per-trial digest: everything aggregation needs, without the series.
struct TrialExtract {
    std::string cell;
    std::string mode;
    std::uint32_t n_robots = 0;
    std::uint32_t rounds = 0;
    double fill_ratio = 0.0;
    double delta = 0.01;
    int bins = 10;
    std::vector<std::size_t> convergence_rounds;
    std::vector<double> errors;
    std::vector<std::uint32_t> correct_per_round;
    std::size_t nonconverged = 0;
};
TrialExtract extract_trial(const TrialRecord& record);

// Streaming aggregator: feed extracts in a deterministic order, then
// finalize. Cells appear in first-seen order. Rejects mixed shapes (records
// of different modes, or disagreeing shapes within one cell).
class CellTable {
public:
    void add(const TrialExtract& extract);
    std::vector<CellSummary> finalize() const;

private:
    struct CellData {
        TrialExtract shape; // first extract; defines the cell's shape
        std::size_t trials = 0;
        std::size_t nonconverged = 0;
        std::vector<double> ks;
        std::vector<double> errors;
        std::vector<std::uint64_t> correct_per_round;
    };
    std::vector<std::string> order_;
    std::map<std::string, CellData> cells_;
    std::string mode_;
};

std::vector<CellSummary> aggregate(std::span<const TrialRecord> records);

// Interpolated quantile (0 <= q <= 1) of an unsorted sample.
double quantile(std::vector<double> values, double q);

// summary table: one row per cell.
// columns: cell,mode,rounds,trials,samples,nonconverged,
//          k_median,k_q1,k_q3,err_median,err_q1,err_q3,consensus_round
void write_summary_csv(std::ostream& out, std::span<const CellSummary> summaries);

// consensus table: one row per (cell, round) with the fraction of robots
// deciding the correct bin. columns: cell,round,fraction_correct
void write_consensus_csv(std::ostream& out, std::span<const CellSummary> summaries);

} // namespace swarm
