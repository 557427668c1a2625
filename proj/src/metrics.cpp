#include "swarm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "swarm/errors.hpp"
#include "swarm/text.hpp"

namespace swarm {

std::size_t convergence_round(std::span<const double> series, double delta)
{
    if (series.empty()) {
        throw std::invalid_argument("convergence_round requires a non-empty series");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("delta must be positive");
    }
    // Scan from the back keeping suffix extrema: index i qualifies iff the
    // whole suffix stays within delta of series[i].
    const std::size_t n = series.size();
    double hi = series[n - 1];
    double lo = series[n - 1];
    std::size_t best = n - 1;
    for (std::size_t i = n; i-- > 0;) {
        hi = std::max(hi, series[i]);
        lo = std::min(lo, series[i]);
        if (hi - series[i] < delta && series[i] - lo < delta) {
            best = i;
        }
    }
    return best;
}

double accuracy(std::span<const double> series, std::size_t k, double fill_ratio)
{
    if (k >= series.size()) {
        throw std::invalid_argument("index out of range");
    }
    return std::abs(series[k] - fill_ratio);
}

int decide_bin(double estimate, int bins)
{
    if (bins < 1) {
        throw std::invalid_argument("bins must be at least 1");
    }
    if (estimate < 0.0 || estimate > 1.0) {
        throw std::invalid_argument("estimate must lie in [0,1]");
    }
    if (estimate >= 1.0) {
        return bins;
    }
    int k = static_cast<int>(estimate * bins);
    // Boundary values k/bins belong to bin k+1; counter the rounding of the
    // product against the rounding of the quotient.
    if (k + 1 < bins && estimate >= static_cast<double>(k + 1) / bins) {
        ++k;
    } else if (k > 0 && estimate < static_cast<double>(k) / bins) {
        --k;
    }
    return k + 1;
}

double consensus_fraction(std::span<const double> estimates, double fill_ratio, int bins)
{
    if (estimates.empty()) {
        throw std::invalid_argument("consensus_fraction requires a non-empty list");
    }
    const int target = decide_bin(fill_ratio, bins);
    std::size_t correct = 0;
    for (double e : estimates) {
        if (decide_bin(e, bins) == target) {
            correct += 1;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(estimates.size());
}

RobotMetrics compute_robot_metrics(std::span<const double> informed_series,
                                   double fill_ratio, double delta, int bins)
{
    RobotMetrics m;
    m.convergence_round = convergence_round(informed_series, delta);
    m.error = accuracy(informed_series, m.convergence_round, fill_ratio);
    m.bin = decide_bin(informed_series[m.convergence_round], bins);
    m.converged =
        informed_series.size() == 1 || m.convergence_round + 1 < informed_series.size();
    return m;
}

TrialExtract extract_trial(const TrialRecord& record)
{
    TrialExtract e;
    e.cell = record.cell;
    e.mode = record.mode;
    e.n_robots = record.n_robots;
    e.rounds = record.rounds;
    e.fill_ratio = record.fill_ratio;
    e.delta = record.delta;
    e.bins = record.bins;
    e.correct_per_round.assign(record.rounds, 0);

    const int target = decide_bin(record.fill_ratio, record.bins);
    for (std::uint32_t robot = 0; robot < record.n_robots; ++robot) {
        const RobotMetrics& m = record.robot_metrics[robot];
        e.convergence_rounds.push_back(m.convergence_round);
        e.errors.push_back(m.error);
        if (!m.converged) {
            e.nonconverged += 1;
        }
        for (std::uint32_t round = 0; round < record.rounds; ++round) {
            if (decide_bin(record.series[robot][round].x, record.bins) == target) {
                e.correct_per_round[round] += 1;
            }
        }
    }
    return e;
}

void CellTable::add(const TrialExtract& extract)
{
    if (mode_.empty()) {
        mode_ = extract.mode;
    } else if (mode_ != extract.mode) {
        throw ConfigError("cannot aggregate records of mixed modes ('" + mode_ + "' vs '" +
                          extract.mode + "')");
    }

    auto [it, inserted] = cells_.try_emplace(extract.cell);
    CellData& cell = it->second;
    if (inserted) {
        order_.push_back(extract.cell);
        cell.shape = extract;
        cell.correct_per_round.assign(extract.rounds, 0);
    } else {
        const TrialExtract& s = cell.shape;
        if (s.n_robots != extract.n_robots || s.rounds != extract.rounds ||
            s.fill_ratio != extract.fill_ratio || s.delta != extract.delta ||
            s.bins != extract.bins) {
            throw ConfigError("records in cell '" + extract.cell +
                              "' disagree on their config shape");
        }
    }
    cell.trials += 1;
    cell.nonconverged += extract.nonconverged;
    for (std::size_t k : extract.convergence_rounds) {
        cell.ks.push_back(static_cast<double>(k));
    }
    cell.errors.insert(cell.errors.end(), extract.errors.begin(), extract.errors.end());
    for (std::uint32_t round = 0; round < extract.rounds; ++round) {
        cell.correct_per_round[round] += extract.correct_per_round[round];
    }
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw std::invalid_argument("quantile of empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<CellSummary> CellTable::finalize() const
{
    std::vector<CellSummary> out;
    out.reserve(order_.size());
    for (const std::string& key : order_) {
        const CellData& cell = cells_.at(key);
        CellSummary s;
        s.cell = key;
        s.mode = cell.shape.mode;
        s.rounds = cell.shape.rounds;
        s.trials = cell.trials;
        s.samples = cell.ks.size();
        s.nonconverged = cell.nonconverged;
        s.k_median = quantile(cell.ks, 0.5);
        s.k_q1 = quantile(cell.ks, 0.25);
        s.k_q3 = quantile(cell.ks, 0.75);
        s.err_median = quantile(cell.errors, 0.5);
        s.err_q1 = quantile(cell.errors, 0.25);
        s.err_q3 = quantile(cell.errors, 0.75);

        const auto robots_total =
            static_cast<double>(cell.trials) * cell.shape.n_robots;
        s.consensus_curve.reserve(cell.shape.rounds);
        for (std::uint32_t round = 0; round < cell.shape.rounds; ++round) {
            const double fraction =
                static_cast<double>(cell.correct_per_round[round]) / robots_total;
            s.consensus_curve.push_back(fraction);
            if (!s.consensus_round && fraction == 1.0) {
                s.consensus_round = round;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<CellSummary> aggregate(std::span<const TrialRecord> records)
{
    CellTable table;
    for (const TrialRecord& r : records) {
        table.add(extract_trial(r));
    }
    return table.finalize();
}

void write_summary_csv(std::ostream& out, std::span<const CellSummary> summaries)
{
    out << "cell,mode,rounds,trials,samples,nonconverged,"
           "k_median,k_q1,k_q3,err_median,err_q1,err_q3,consensus_round\n";
    for (const CellSummary& s : summaries) {
        out << s.cell << "," << s.mode << "," << s.rounds << "," << s.trials << ","
            << s.samples << "," << s.nonconverged << "," << format_double(s.k_median) << ","
            << format_double(s.k_q1) << "," << format_double(s.k_q3) << ","
            << format_double(s.err_median) << "," << format_double(s.err_q1) << ","
            << format_double(s.err_q3) << ","
            << (s.consensus_round ? std::to_string(*s.consensus_round) : "never") << "\n";
    }
}

void write_consensus_csv(std::ostream& out, std::span<const CellSummary> summaries)
{
    out << "cell,round,fraction_correct\n";
    for (const CellSummary& s : summaries) {
        for (std::size_t round = 0; round < s.consensus_curve.size(); ++round) {
            out << s.cell << "," << round << "," << format_double(s.consensus_curve[round])
                << "\n";
        }
    }
}

} // namespace swarm
