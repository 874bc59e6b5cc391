#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "ptrisk/matrix.hpp"
#include "ptrisk/rng.hpp"

namespace ptrisk {

enum class CopulaFamily { Independence, Gaussian, StudentT, Clayton, Frank, Gumbel };

const char* copula_family_name(CopulaFamily f);

/// Parametric copula model covering the base families used by the pipeline.
/// Immutable after construction; construction validates all parameters
/// (correlation matrices must be symmetric positive definite with unit
/// diagonal). Gumbel with lambda = 1 degenerates to independence and is
/// allowed.
class CopulaModel {
  public:
    static CopulaModel independence(std::size_t dim);
    static CopulaModel gaussian(Matrix corr);
    static CopulaModel gaussian(std::size_t dim, double rho);  ///< equicorrelation, rho in [0,1)
    static CopulaModel student_t(Matrix corr, double nu);
    static CopulaModel student_t(std::size_t dim, double rho, double nu);
    static CopulaModel clayton(std::size_t dim, double theta);  ///< theta > 0
    static CopulaModel frank(std::size_t dim, double theta);    ///< theta > 0
    static CopulaModel gumbel(std::size_t dim, double lambda);  ///< lambda >= 1

    CopulaFamily family() const { return family_; }
    std::size_t dim() const { return dim_; }
    const Matrix& corr() const { return corr_; }
    double nu() const { return nu_; }
    double theta() const { return theta_; }

    bool has_closed_form_cdf() const;

  private:
    CopulaModel(CopulaFamily family, std::size_t dim) : family_(family), dim_(dim) {}

    CopulaFamily family_;
    std::size_t dim_;
    Matrix corr_;      // Gaussian / StudentT
    Matrix chol_;      // cached Cholesky factor
    double nu_ = 0.0;  // StudentT
    double theta_ = 0.0;

    friend Matrix sample_copula(const CopulaModel&, std::size_t, Rng&);
};

/// n i.i.d. rows from the copula; every column is marginally uniform on (0,1).
Matrix sample_copula(const CopulaModel& c, std::size_t n, Rng& rng);

/// Closed-form CDF for the independence and Archimedean families; throws
/// UnsupportedOperationError for Gaussian/StudentT (use empirical CDFs).
double copula_cdf(const CopulaModel& c, std::span<const double> u);

/// Empirical upper tail dependence chi(i,j) at level u: the fraction of rows
/// with column i above u among rows with column j above u. Requires at least
/// 50 exceedances in column j (InsufficientDataError otherwise).
double empirical_chi(const Matrix& samples, std::size_t i, std::size_t j, double u);

using CopulaCdfFn = std::function<double(std::span<const double>)>;

/// Finite-t approximation (1 - C(1 + t x)) / t of the stable tail dependence
/// function, for x <= 0 componentwise and t in (0, 0.1].
double stdf_estimate(const CopulaCdfFn& cdf, std::span<const double> x, double t);
double stdf_estimate(const CopulaModel& c, std::span<const double> x, double t);

}  // namespace ptrisk
