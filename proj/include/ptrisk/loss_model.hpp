#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ptrisk/copulas.hpp"
#include "ptrisk/distributions.hpp"
#include "ptrisk/matrix.hpp"
#include "ptrisk/piecing_together.hpp"
#include "ptrisk/rng.hpp"

namespace ptrisk {

/// One business line: spliced severity plus negative binomial event count.
struct BusinessLine {
    std::string name;
    SplicedSeverity severity;
    NegBin frequency;
};

/// n_years compound annual totals: each year sums N i.i.d. severities with
/// N drawn from the line's frequency model (zero-event years total 0).
std::vector<double> simulate_annual_totals(const BusinessLine& line, std::size_t n_years,
                                           Rng& rng);

/// Empirical distribution of simulated annual totals; the quantile is the
/// ceil(n p)-th order statistic (the generalized inverse of the empirical
/// CDF), clamped to the observed range.
class EmpiricalMargin {
  public:
    explicit EmpiricalMargin(std::vector<double> totals);  ///< throws on empty input

    double quantile(double p) const;  ///< 0 < p <= 1
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

enum class ThresholdMode { Marginal, Explicit };

/// Parameters of the GPD-copula tail splice used when a scenario enables the
/// multivariate piecing-together step.
struct PtSettings {
    double gpd_rho = 0.7;  // correlation of the Gaussian copula behind S
    ThresholdMode threshold_mode = ThresholdMode::Marginal;
    std::vector<double> explicit_y;  // used when threshold_mode == Explicit
};

/// Full simulation scenario: lines, joint dependence model, sizes and seed.
struct Scenario {
    Scenario(std::vector<BusinessLine> lines_in, CopulaModel joint_in)
        : lines(std::move(lines_in)), joint(std::move(joint_in)) {}

    std::vector<BusinessLine> lines;
    CopulaModel joint;  // base copula of the annual totals (and PT base)
    bool pt_enabled = false;
    PtSettings pt;
    std::size_t n_sim = 10'000;
    std::size_t n_margin = 1'000'000;
    std::uint64_t seed = 1;
    std::vector<double> levels = {0.95, 0.99, 0.995, 0.999};

    void validate() const;  ///< throws std::invalid_argument
};

/// The copula threshold vector for a PT scenario. Marginal mode derives
/// y_i = F_i(u(i)) - 1 from the lognormal body CDF at the severity threshold.
std::vector<double> scenario_threshold_vector(const Scenario& s);

/// Empirical margins for every line, each built from n_margin compound draws
/// on its own substream of `seed` (substream k_margin_base + line index).
std::vector<EmpiricalMargin> build_margins(const Scenario& s);

/// One joint simulation: n_sim rows, one column per line carrying that line's
/// annual total, plus a final column with the row sum L. The joint ranks come
/// from the scenario's copula (plain, or PT-spliced when enabled); margins
/// must come from build_margins on the same scenario.
Matrix simulate_joint_losses(const Scenario& s, const std::vector<EmpiricalMargin>& margins,
                             Rng& rng);

/// Convenience wrapper that builds the margins internally.
Matrix simulate_joint_losses(const Scenario& s, Rng& rng);

// Substream labels for the deterministic stream tree under Scenario::seed.
inline constexpr std::uint64_t k_margin_stream_base = 0x100;
inline constexpr std::uint64_t k_replication_stream_base = 0x10000;

}  // namespace ptrisk
