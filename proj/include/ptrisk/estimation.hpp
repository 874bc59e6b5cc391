#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptrisk/distributions.hpp"

namespace ptrisk {

/// GPD maximum-likelihood result: fitted parameters plus the attained
/// log-likelihood, so callers can sanity-check against alternatives.
struct GpdFit {
    GpdExcess params;
    double log_likelihood;
};

/// GPD log-likelihood of a sample of excesses under (beta, xi), xi > 0.
/// Returns -inf for infeasible parameters.
double gpd_log_likelihood(std::span<const double> excesses, double beta, double xi);

/// Maximum likelihood fit of the excess GPD, shape constrained to xi > 0.
/// The likelihood is profiled over xi on a log-spaced grid in [0.01, 5] and
/// refined by golden-section search; beta is optimized per xi on a log scale.
/// Requires at least 30 strictly positive excesses with nonzero spread;
/// throws InsufficientDataError / std::domain_error / FitInfeasibleError.
GpdFit fit_gpd_mle(std::span<const double> excesses);

/// Lognormal MLE. sigma uses the divisor-n (maximum likelihood) convention;
/// a zero-spread sample is reported with degenerate = true rather than thrown.
struct LognormalFit {
    double mu;
    double sigma;
    bool degenerate;  // sigma == 0

    Lognormal to_lognormal() const;  ///< throws std::invalid_argument when degenerate
};

LognormalFit fit_lognormal_mle(std::span<const double> data);

/// Method-of-moments negative binomial fit: r = s^2/m - 1, alpha = m/r,
/// using the population (divisor-n) variance. Requires overdispersion
/// s^2 > m > 0; throws FitInfeasibleError at or below the Poisson boundary.
NegBin fit_negbin_moments(std::span<const long> counts);

/// Empirical mean excess curve for threshold selection diagnostics.
/// Thresholds with no exceedances are dropped; thresholds kept with fewer
/// than 5 exceedances carry a low-count warning flag.
struct MeanExcessCurve {
    std::vector<double> thresholds;
    std::vector<double> mean_excess;
    std::vector<std::size_t> counts;
    std::vector<bool> low_count;  // count < 5

    bool has_warnings() const;
};

MeanExcessCurve mean_excess(std::span<const double> data, std::span<const double> thresholds);

}  // namespace ptrisk
