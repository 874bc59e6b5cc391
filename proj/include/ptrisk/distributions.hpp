#pragma once

#include <cstddef>
#include <vector>

#include "ptrisk/rng.hpp"

namespace ptrisk {

// ---------------------------------------------------------------------------
// Standardized extreme value families
// ---------------------------------------------------------------------------

enum class EvdKind { Frechet, Weibull, Gumbel };

/// Standardized extreme value distribution: Frechet exp(-x^-a) on x>0,
/// reverse Weibull exp(-(-x)^a) on x<=0, or Gumbel exp(-e^-x).
class EvdFamily {
  public:
    static EvdFamily frechet(double alpha);
    static EvdFamily weibull(double alpha);
    static EvdFamily gumbel();

    /// CDF; out-of-support arguments return the boundary value 0 or 1.
    double cdf(double x) const;

    EvdKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

  private:
    EvdFamily(EvdKind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    EvdKind kind_;
    double alpha_;
};

enum class GpdStdKind { Pareto, Beta, Exponential };

/// Standardized generalized Pareto family: Pareto 1-x^-a on x>=1,
/// beta 1-(-x)^a on [-1,0], or exponential 1-e^-x on x>=0.
class GpdStdFamily {
  public:
    static GpdStdFamily pareto(double alpha);
    static GpdStdFamily beta(double alpha);
    static GpdStdFamily exponential();

    /// CDF, clamped to [0,1] outside the support.
    double cdf(double x) const;

    GpdStdKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

  private:
    GpdStdFamily(GpdStdKind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    GpdStdKind kind_;
    double alpha_;
};

// ---------------------------------------------------------------------------
// Severity building blocks
// ---------------------------------------------------------------------------

/// Excess-over-threshold GPD with scale beta > 0 and shape xi > 0:
/// CDF(z) = 1 - (1 + xi z / beta)^(-1/xi) for excesses z >= 0.
class GpdExcess {
  public:
    GpdExcess(double beta, double xi);

    double cdf(double z) const;       ///< z >= 0, else std::domain_error
    double quantile(double p) const;  ///< 0 <= p < 1, else std::domain_error

    double beta() const { return beta_; }
    double xi() const { return xi_; }

  private:
    double beta_;
    double xi_;
};

class Lognormal {
  public:
    Lognormal(double mu, double sigma);

    double cdf(double x) const;       ///< 0 for x <= 0
    double quantile(double p) const;  ///< 0 < p < 1

    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

  private:
    double mu_;
    double sigma_;
};

/// Severity distribution spliced at a threshold u: lognormal body below u,
/// excess GPD above. Continuous at u since the GPD term vanishes there.
class SplicedSeverity {
  public:
    SplicedSeverity(Lognormal body, double u, GpdExcess tail);

    double cdf(double x) const;

    /// Generalized inverse inf{t : F(t) >= p}; the body branch wins the tie
    /// at the splice point. 0 < p < 1, else std::domain_error.
    double quantile(double p) const;

    const Lognormal& body() const { return body_; }
    double threshold() const { return u_; }
    const GpdExcess& tail() const { return tail_; }
    double body_cdf_at_threshold() const { return f_u_; }

  private:
    Lognormal body_;
    double u_;
    GpdExcess tail_;
    double f_u_;  // body CDF at u, cached
};

/// n i.i.d. draws by inverse transform through the spliced quantile.
std::vector<double> sample_spliced(const SplicedSeverity& s, std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Frequency
// ---------------------------------------------------------------------------

/// Negative binomial with size alpha > 0 and odds parameter r > 0:
/// P(N=n) = C(alpha+n-1, n) (1/(1+r))^alpha (r/(1+r))^n.
/// Mean alpha*r, variance alpha*r*(1+r).
class NegBin {
  public:
    NegBin(double alpha, double r);

    double pmf(unsigned n) const;
    double log_pmf(unsigned n) const;

    double mean() const { return alpha_ * r_; }
    double variance() const { return alpha_ * r_ * (1.0 + r_); }
    double alpha() const { return alpha_; }
    double r() const { return r_; }

  private:
    double alpha_;
    double r_;
};

/// One draw via the gamma-Poisson mixture N ~ Poisson(Lambda),
/// Lambda ~ Gamma(alpha, scale r).
long sample_negbin(const NegBin& m, Rng& rng);

}  // namespace ptrisk
