#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptrisk/loss_model.hpp"

namespace ptrisk {

/// Empirical value at risk: the ceil(n alpha)-th order statistic of the
/// sample (the generalized inverse of the empirical CDF).
double var_hat(std::span<const double> sample, double alpha);

/// Empirical expected shortfall with the n(1-alpha) divisor:
/// (1/(n(1-alpha))) * sum of observations >= var_hat(alpha). Note this is not
/// the conditional tail mean unless n(1-alpha) equals the exceedance count.
double es_hat(std::span<const double> sample, double alpha);

/// Median shortfall: var_hat at level (1+alpha)/2.
double ms_hat(std::span<const double> sample, double alpha);

/// Per-replication risk estimates, indexed [identifier][level]; identifiers
/// are the scenario's lines in order followed by the total.
struct ReplicationEstimates {
    std::vector<std::vector<double>> var;
    std::vector<std::vector<double>> es;
    std::vector<std::vector<double>> ms;
};

struct RiskRow {
    std::string id;
    double level;
    double var_mean, es_mean, ms_mean;
    double var_median, es_median, ms_median;
};

/// Averaged risk report over R independent replications. Means are the
/// headline numbers (matching the replication protocol); medians accompany
/// them for heavy-tail robustness.
struct RiskReport {
    std::vector<RiskRow> rows;
    std::size_t replications = 0;
    std::size_t n_sim = 0;
    std::uint64_t seed = 0;
    std::string generator = "mt19937_64";
    /// Lines whose GPD shape is >= 1: their theoretical mean (and expected
    /// shortfall) is infinite, so ES estimates are volatile.
    std::vector<std::string> infinite_mean_lines;
};

/// Runs R independent joint simulations (replication r on substream
/// k_replication_stream_base + r of the scenario seed) and returns the raw
/// per-replication estimates in replication order. Margins are built once
/// and shared. Thread count affects speed only, never the result.
std::vector<ReplicationEstimates> replicate_estimates(const Scenario& s, std::size_t R,
                                                      unsigned threads = 1);

/// Aggregates per-replication estimates into the averaged report.
RiskReport summarize_replications(const Scenario& s,
                                  const std::vector<ReplicationEstimates>& reps);

RiskReport replicate_report(const Scenario& s, std::size_t R, unsigned threads = 1);

}  // namespace ptrisk
