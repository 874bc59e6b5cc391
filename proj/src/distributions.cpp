#include "ptrisk/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "ptrisk/special_functions.hpp"

namespace ptrisk {

// ---------------------------------------------------------------------------
// EvdFamily
// ---------------------------------------------------------------------------

EvdFamily EvdFamily::frechet(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("EvdFamily: Frechet shape alpha must be > 0");
    return EvdFamily(EvdKind::Frechet, alpha);
}

EvdFamily EvdFamily::weibull(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("EvdFamily: Weibull shape alpha must be > 0");
    return EvdFamily(EvdKind::Weibull, alpha);
}

EvdFamily EvdFamily::gumbel() { return EvdFamily(EvdKind::Gumbel, 0.0); }

double EvdFamily::cdf(double x) const {
    switch (kind_) {
        case EvdKind::Frechet:
            if (x <= 0.0) return 0.0;
            return std::exp(-std::pow(x, -alpha_));
        case EvdKind::Weibull:
            if (x > 0.0) return 1.0;
            return std::exp(-std::pow(-x, alpha_));
        case EvdKind::Gumbel:
            return std::exp(-std::exp(-x));
    }
    return 0.0;  // unreachable
}

// ---------------------------------------------------------------------------
// GpdStdFamily
// ---------------------------------------------------------------------------

GpdStdFamily GpdStdFamily::pareto(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("GpdStdFamily: Pareto shape alpha must be > 0");
    return GpdStdFamily(GpdStdKind::Pareto, alpha);
}

GpdStdFamily GpdStdFamily::beta(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("GpdStdFamily: beta shape alpha must be > 0");
    return GpdStdFamily(GpdStdKind::Beta, alpha);
}

GpdStdFamily GpdStdFamily::exponential() { return GpdStdFamily(GpdStdKind::Exponential, 0.0); }

double GpdStdFamily::cdf(double x) const {
    switch (kind_) {
        case GpdStdKind::Pareto:
            if (x < 1.0) return 0.0;
            return 1.0 - std::pow(x, -alpha_);
        case GpdStdKind::Beta:
            if (x < -1.0) return 0.0;
            if (x > 0.0) return 1.0;
            return 1.0 - std::pow(-x, alpha_);
        case GpdStdKind::Exponential:
            if (x < 0.0) return 0.0;
            return 1.0 - std::exp(-x);
    }
    return 0.0;  // unreachable
}

// ---------------------------------------------------------------------------
// GpdExcess
// ---------------------------------------------------------------------------

GpdExcess::GpdExcess(double beta, double xi) : beta_(beta), xi_(xi) {
    if (!(beta > 0.0)) throw std::invalid_argument("GpdExcess: scale beta must be > 0");
    if (!(xi > 0.0)) throw std::invalid_argument("GpdExcess: shape xi must be > 0");
}

double GpdExcess::cdf(double z) const {
    if (!(z >= 0.0)) throw std::domain_error("GpdExcess::cdf: excess must be non-negative");
    return 1.0 - std::pow(1.0 + xi_ * z / beta_, -1.0 / xi_);
}

double GpdExcess::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::domain_error("GpdExcess::quantile: p must lie in [0,1); the support is unbounded");
    }
    return beta_ / xi_ * (std::pow(1.0 - p, -xi_) - 1.0);
}

// ---------------------------------------------------------------------------
// Lognormal
// ---------------------------------------------------------------------------

Lognormal::Lognormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("Lognormal: sigma must be > 0");
}

double Lognormal::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return std_normal_cdf((std::log(x) - mu_) / sigma_);
}

double Lognormal::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Lognormal::quantile: p must lie in (0,1)");
    return std::exp(mu_ + sigma_ * std_normal_quantile(p));
}

// ---------------------------------------------------------------------------
// SplicedSeverity
// ---------------------------------------------------------------------------

SplicedSeverity::SplicedSeverity(Lognormal body, double u, GpdExcess tail)
    : body_(body), u_(u), tail_(tail), f_u_(body.cdf(u)) {
    if (!(u > 0.0)) throw std::invalid_argument("SplicedSeverity: threshold u must be > 0");
}

double SplicedSeverity::cdf(double x) const {
    if (x <= u_) return body_.cdf(x);
    return f_u_ + (1.0 - f_u_) * tail_.cdf(x - u_);
}

double SplicedSeverity::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("SplicedSeverity::quantile: p must lie in (0,1)");
    }
    if (p <= f_u_) return body_.quantile(p);
    return u_ + tail_.quantile((p - f_u_) / (1.0 - f_u_));
}

std::vector<double> sample_spliced(const SplicedSeverity& s, std::size_t n, Rng& rng) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(s.quantile(rng.uniform()));
    return out;
}

// ---------------------------------------------------------------------------
// NegBin
// ---------------------------------------------------------------------------

NegBin::NegBin(double alpha, double r) : alpha_(alpha), r_(r) {
    if (!(alpha > 0.0)) throw std::invalid_argument("NegBin: size alpha must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("NegBin: odds parameter r must be > 0");
}

double NegBin::log_pmf(unsigned n) const {
    // Binomial coefficient in log space via lgamma; stable for large n.
    double nd = static_cast<double>(n);
    return std::lgamma(alpha_ + nd) - std::lgamma(alpha_) - std::lgamma(nd + 1.0) -
           alpha_ * std::log1p(r_) + nd * (std::log(r_) - std::log1p(r_));
}

double NegBin::pmf(unsigned n) const { return std::exp(log_pmf(n)); }

long sample_negbin(const NegBin& m, Rng& rng) {
    std::gamma_distribution<double> gamma(m.alpha(), m.r());
    double lambda = gamma(rng.engine());
    if (!(lambda > 0.0)) return 0;
    std::poisson_distribution<long> poisson(lambda);
    return poisson(rng.engine());
}

}  // namespace ptrisk
