#include "ptrisk/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ptrisk/errors.hpp"

namespace ptrisk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
double golden_section_max(F f, double lo, double hi, int iters) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

double profile_beta_given_xi(std::span<const double> z, double xi, double log_mean) {
    // The likelihood in beta is unimodal for fixed xi > 0.
    auto loglik = [&](double log_beta) {
        return gpd_log_likelihood(z, std::exp(log_beta), xi);
    };
    return golden_section_max(loglik, log_mean - 12.0, log_mean + 12.0, 80);
}

}  // namespace

double gpd_log_likelihood(std::span<const double> excesses, double beta, double xi) {
    if (!(beta > 0.0) || !(xi > 0.0)) return kNegInf;
    const double n = static_cast<double>(excesses.size());
    double sum = 0.0;
    for (double z : excesses) sum += std::log1p(xi * z / beta);
    return -n * std::log(beta) - (1.0 + 1.0 / xi) * sum;
}

GpdFit fit_gpd_mle(std::span<const double> excesses) {
    if (excesses.size() < 30) {
        throw InsufficientDataError("fit_gpd_mle: need at least 30 excesses, got " +
                                    std::to_string(excesses.size()));
    }
    double sum = 0.0;
    double min_z = std::numeric_limits<double>::infinity();
    double max_z = -std::numeric_limits<double>::infinity();
    for (double z : excesses) {
        if (!(z > 0.0)) throw std::domain_error("fit_gpd_mle: excesses must be strictly positive");
        sum += z;
        min_z = std::min(min_z, z);
        max_z = std::max(max_z, z);
    }
    if (max_z - min_z <= 0.0) {
        throw FitInfeasibleError("fit_gpd_mle: degenerate sample (all excesses equal)");
    }
    const double log_mean = std::log(sum / static_cast<double>(excesses.size()));

    const double xi_lo = 0.01, xi_hi = 5.0;
    const int n_grid = 41;
    double best_xi = xi_lo;
    double best_ll = kNegInf;
    for (int i = 0; i < n_grid; ++i) {
        double xi = xi_lo * std::pow(xi_hi / xi_lo, static_cast<double>(i) / (n_grid - 1));
        double lb = profile_beta_given_xi(excesses, xi, log_mean);
        double ll = gpd_log_likelihood(excesses, std::exp(lb), xi);
        if (ll > best_ll) {
            best_ll = ll;
            best_xi = xi;
        }
    }
    // Refine xi around the best grid point (one grid step each side).
    const double step = std::pow(xi_hi / xi_lo, 1.0 / (n_grid - 1));
    auto profile = [&](double log_xi) {
        double xi = std::exp(log_xi);
        double lb = profile_beta_given_xi(excesses, xi, log_mean);
        return gpd_log_likelihood(excesses, std::exp(lb), xi);
    };
    double lo = std::log(std::max(xi_lo, best_xi / step));
    double hi = std::log(std::min(xi_hi, best_xi * step));
    double xi_hat = std::exp(golden_section_max(profile, lo, hi, 60));
    double beta_hat = std::exp(profile_beta_given_xi(excesses, xi_hat, log_mean));
    return GpdFit{GpdExcess(beta_hat, xi_hat), gpd_log_likelihood(excesses, beta_hat, xi_hat)};
}

Lognormal LognormalFit::to_lognormal() const {
    if (degenerate) {
        throw std::invalid_argument("LognormalFit: degenerate fit (sigma = 0) is not a distribution");
    }
    return Lognormal(mu, sigma);
}

LognormalFit fit_lognormal_mle(std::span<const double> data) {
    if (data.size() < 2) {
        throw InsufficientDataError("fit_lognormal_mle: need at least 2 observations");
    }
    double sum_log = 0.0;
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("fit_lognormal_mle: data must be strictly positive");
        sum_log += std::log(x);
    }
    const double n = static_cast<double>(data.size());
    const double mu = sum_log / n;
    double ss = 0.0;
    for (double x : data) {
        double d = std::log(x) - mu;
        ss += d * d;
    }
    const double sigma = std::sqrt(ss / n);
    return LognormalFit{mu, sigma, sigma == 0.0};
}

NegBin fit_negbin_moments(std::span<const long> counts) {
    if (counts.empty()) throw InsufficientDataError("fit_negbin_moments: empty sample");
    double mean = 0.0;
    for (long c : counts) {
        if (c < 0) throw std::domain_error("fit_negbin_moments: counts must be non-negative");
        mean += static_cast<double>(c);
    }
    const double n = static_cast<double>(counts.size());
    mean /= n;
    double var = 0.0;
    for (long c : counts) {
        double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    var /= n;
    if (!(mean > 0.0)) throw FitInfeasibleError("fit_negbin_moments: sample mean must be positive");
    if (!(var > mean)) {
        throw FitInfeasibleError(
            "fit_negbin_moments: sample is not overdispersed (variance <= mean); "
            "the negative binomial degenerates to the Poisson boundary");
    }
    const double r = var / mean - 1.0;
    const double alpha = mean / r;
    return NegBin(alpha, r);
}

bool MeanExcessCurve::has_warnings() const {
    return std::find(low_count.begin(), low_count.end(), true) != low_count.end();
}

MeanExcessCurve mean_excess(std::span<const double> data, std::span<const double> thresholds) {
    std::vector<double> sorted_thresholds(thresholds.begin(), thresholds.end());
    std::sort(sorted_thresholds.begin(), sorted_thresholds.end());

    MeanExcessCurve curve;
    for (double t : sorted_thresholds) {
        double sum = 0.0;
        std::size_t count = 0;
        for (double x : data) {
            if (x > t) {
                sum += x - t;
                ++count;
            }
        }
        if (count == 0) continue;  // no exceedances: mean excess undefined, drop
        curve.thresholds.push_back(t);
        curve.mean_excess.push_back(sum / static_cast<double>(count));
        curve.counts.push_back(count);
        curve.low_count.push_back(count < 5);
    }
    return curve;
}

}  // namespace ptrisk
